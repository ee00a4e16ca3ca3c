#include "aopc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "aopc/errors.hpp"

namespace aopc::io {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

long parseCount(std::string_view tok, int line, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0)
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return value;
}

int lineOfOffset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

void rejectUnknown(const nlohmann::json& obj, std::initializer_list<const char*> known,
                   const std::string& where) {
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) throw InputError(where + ": unknown field '" + item.key() + "'");
  }
}

int intField(const nlohmann::json& v, const std::string& name) {
  if (!v.is_number_integer()) throw InputError("field '" + name + "' must be an integer");
  return v.get<int>();
}

}  // namespace

UndirectedGraph parseDimacs(std::string_view text) {
  int lineNo = 0;
  long n = -1;
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    const auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(lineNo, "second problem line");
      if (tok.size() != 4 || tok[1] != "edge") throw ParseError(lineNo, "expected 'p edge n m'");
      n = parseCount(tok[2], lineNo, "vertex count");
      parseCount(tok[3], lineNo, "edge count");
      continue;
    }
    if (tok[0] == "e") {
      if (n < 0) throw ParseError(lineNo, "edge before the problem line");
      if (tok.size() != 3) throw ParseError(lineNo, "expected 'e u v'");
      const long u = parseCount(tok[1], lineNo, "vertex");
      const long v = parseCount(tok[2], lineNo, "vertex");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineNo, "vertex out of range");
      if (u == v) throw ParseError(lineNo, "self-loop");
      const int a = static_cast<int>(std::min(u, v)) - 1;
      const int b = static_cast<int>(std::max(u, v)) - 1;
      if (seen.insert({a, b}).second) edges.push_back({a, b});
      continue;
    }
    throw ParseError(lineNo, "unknown line type '" + std::string(tok[0]) + "'");
  }
  if (n < 0) throw ParseError(lineNo, "missing problem line");
  return UndirectedGraph(static_cast<int>(n), std::move(edges));
}

fap::FapInstance parseFapJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(lineOfOffset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!doc.is_object()) throw InputError("FAP document must be an object");
  rejectUnknown(doc, {"links", "freqSets", "pairs", "spectrum"}, "instance");
  if (!doc.contains("links")) throw InputError("missing field 'links'");
  if (!doc.contains("pairs")) throw InputError("missing field 'pairs'");

  fap::FapInstance inst;
  inst.links = intField(doc["links"], "links");
  if (doc.contains("freqSets")) {
    const auto& sets = doc["freqSets"];
    if (!sets.is_array()) throw InputError("field 'freqSets' must be an array");
    for (const auto& s : sets) {
      if (!s.is_array()) throw InputError("each frequency set must be an array");
      std::vector<int> values;
      for (const auto& f : s) values.push_back(intField(f, "freqSets"));
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      inst.freqSets.push_back(std::move(values));
    }
  }
  if (!doc["pairs"].is_array()) throw InputError("field 'pairs' must be an array");
  for (const auto& p : doc["pairs"]) {
    if (!p.is_object()) throw InputError("each pair must be an object");
    rejectUnknown(p, {"i", "j", "d", "c"}, "pair");
    for (const char* k : {"i", "j", "d"})
      if (!p.contains(k)) throw InputError(std::string("pair is missing '") + k + "'");
    fap::LinkPair pair;
    pair.i = intField(p["i"], "i");
    pair.j = intField(p["j"], "j");
    pair.d = intField(p["d"], "d");
    if (p.contains("c")) {
      if (!p["c"].is_number()) throw InputError("field 'c' must be a number");
      pair.cost = p["c"].get<double>();
    }
    inst.pairs.push_back(pair);
  }
  if (doc.contains("spectrum") && !doc["spectrum"].is_null())
    inst.spectrum = intField(doc["spectrum"], "spectrum");
  inst.validate();
  return inst;
}

nlohmann::json cutCountsJson(const std::array<long, kRowClassCount>& counts) {
  nlohmann::json out = nlohmann::json::object();
  for (int c = 0; c < kRowClassCount; ++c)
    if (counts[c] > 0) out[std::string(rowClassName(static_cast<RowClass>(c)))] = counts[c];
  return out;
}

nlohmann::json solveReportJson(const SolveReport& report) {
  return {{"status", std::string(solveStatusName(report.status))},
          {"objective", report.objective},
          {"boundHistory", report.boundHistory},
          {"cutCounts", cutCountsJson(report.cutCounts)},
          {"nodes", report.nodes}};
}

nlohmann::json orientationJson(const UndirectedGraph& g, const Orientation& o) {
  nlohmann::json arcs = nlohmann::json::array();
  for (int e = 0; e < g.edgeCount(); ++e) {
    const Edge& edge = g.edge(e);
    if (o.forward.at(e))
      arcs.push_back({edge.u, edge.v});
    else
      arcs.push_back({edge.v, edge.u});
  }
  return arcs;
}

}  // namespace aopc::io
