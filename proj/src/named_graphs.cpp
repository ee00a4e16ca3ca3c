#include "aopc/named_graphs.hpp"

#include <charconv>
#include <string>

#include "aopc/errors.hpp"

namespace aopc::graphs {

UndirectedGraph singleEdge() { return UndirectedGraph(2, {{0, 1}}); }

UndirectedGraph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph star(int leaves) {
  std::vector<Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return UndirectedGraph(leaves + 1, std::move(edges));
}

UndirectedGraph paw() { return UndirectedGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}); }

UndirectedGraph petersen() {
  std::vector<Edge> edges;
  for (int k = 0; k < 5; ++k) {
    edges.push_back({k, (k + 1) % 5});          // outer 5-cycle
    edges.push_back({k, k + 5});                // spokes
    edges.push_back({5 + k, 5 + (k + 2) % 5});  // inner pentagram
  }
  return UndirectedGraph(10, std::move(edges));
}

namespace {

int parseSuffix(std::string_view name, std::size_t prefix) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(name.data() + prefix, name.data() + name.size(), value);
  if (ec != std::errc{} || ptr != name.data() + name.size() || value <= 0)
    throw InputError("bad graph name: " + std::string(name));
  return value;
}

}  // namespace

UndirectedGraph byName(std::string_view name) {
  if (name == "edge") return singleEdge();
  if (name == "paw") return paw();
  if (name == "petersen") return petersen();
  if (name.starts_with("star")) return star(parseSuffix(name, 4));
  if (name.size() > 1) {
    switch (name[0]) {
      case 'K': return complete(parseSuffix(name, 1));
      case 'C': return cycle(parseSuffix(name, 1));
      case 'P': return path(parseSuffix(name, 1));
      default: break;
    }
  }
  throw InputError("unknown graph name: " + std::string(name));
}

}  // namespace aopc::graphs
