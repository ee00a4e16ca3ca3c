#pragma once

#include <string_view>

#include <json.hpp>

#include "aopc/fap.hpp"
#include "aopc/graph.hpp"
#include "aopc/solver.hpp"

namespace aopc::io {

/// DIMACS .col text: `c` comments, one `p edge n m` header, then `e u v`
/// lines with 1-based vertices. Repeated or reversed edges are merged.
/// Throws ParseError carrying the offending line number.
UndirectedGraph parseDimacs(std::string_view text);

/// {"links": n, "freqSets": [[...]], "pairs": [{"i","j","d","c"}],
///  "spectrum": int|null}. A pair with "c" is soft. Unknown fields are
/// rejected. Syntax errors raise ParseError, schema errors InputError.
fap::FapInstance parseFapJson(std::string_view text);

nlohmann::json cutCountsJson(const std::array<long, kRowClassCount>& counts);
nlohmann::json solveReportJson(const SolveReport& report);
nlohmann::json orientationJson(const UndirectedGraph& g, const Orientation& o);

}  // namespace aopc::io
