#pragma once

#include <string_view>

#include "aopc/graph.hpp"

namespace aopc::graphs {

UndirectedGraph singleEdge();
UndirectedGraph complete(int n);
UndirectedGraph cycle(int n);
/// Path on n vertices (n-1 edges).
UndirectedGraph path(int n);
/// Star K_{1,leaves}; the center is vertex 0.
UndirectedGraph star(int leaves);
/// Triangle 0-1-2 with pendant vertex 3 attached to 2.
UndirectedGraph paw();
UndirectedGraph petersen();

/// Lookup by short name: "edge", "P3", "K4", "C5", "star3", "paw", "petersen".
/// Throws InputError on unknown names.
UndirectedGraph byName(std::string_view name);

}  // namespace aopc::graphs
