#include "lexcausal/graph.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lexcausal/error.hpp"
#include "lexcausal/text_io.hpp"

namespace lexcausal {

std::string_view to_string(EdgeProvenance p) noexcept {
  switch (p) {
    case EdgeProvenance::v_structure: return "v_structure";
    case EdgeProvenance::meek: return "meek";
    case EdgeProvenance::manual: return "manual";
  }
  return "meek";
}

EdgeProvenance parse_edge_provenance(std::string_view text) {
  if (text == "v_structure") return EdgeProvenance::v_structure;
  if (text == "meek") return EdgeProvenance::meek;
  if (text == "manual") return EdgeProvenance::manual;
  throw Error(Errc::ConfigError, "unknown edge provenance '" + std::string(text) + "'");
}

CausalGraph::CausalGraph(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw Error(Errc::InvalidArgument, "duplicate node name '" + names_[i] + "'");
  arcs_.assign(names_.size() * names_.size(), 0);
}

CausalGraph CausalGraph::complete(std::vector<std::string> names) {
  CausalGraph g(std::move(names));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) g.add_undirected(i, j);
  return g;
}

std::size_t CausalGraph::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error(Errc::UnknownNode, "graph has no node '" + std::string(name) + "'");
}

void CausalGraph::check(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw Error(Errc::UnknownNode, "node index out of range");
  if (a == b) throw Error(Errc::InvalidArgument, "self-loops are not allowed");
}

std::optional<EdgeProvenance> CausalGraph::provenance(std::size_t from, std::size_t to) const {
  if (!is_directed(from, to)) return std::nullopt;
  auto it = provenance_.find({from, to});
  if (it == provenance_.end()) return std::nullopt;
  return it->second;
}

void CausalGraph::add_undirected(std::size_t a, std::size_t b) {
  check(a, b);
  set_arc(a, b, true);
  set_arc(b, a, true);
  provenance_.erase({a, b});
  provenance_.erase({b, a});
}

void CausalGraph::add_directed(std::size_t from, std::size_t to, std::optional<EdgeProvenance> provenance) {
  check(from, to);
  set_arc(from, to, true);
  set_arc(to, from, false);
  provenance_.erase({to, from});
  if (provenance)
    provenance_[{from, to}] = *provenance;
  else
    provenance_.erase({from, to});
}

void CausalGraph::remove_edge(std::size_t a, std::size_t b) {
  check(a, b);
  set_arc(a, b, false);
  set_arc(b, a, false);
  provenance_.erase({a, b});
  provenance_.erase({b, a});
}

void CausalGraph::orient(std::size_t from, std::size_t to, EdgeProvenance provenance) {
  check(from, to);
  if (!adjacent(from, to))
    throw Error(Errc::EdgeNotFound, "no edge between '" + name(from) + "' and '" + name(to) + "'");
  add_directed(from, to, provenance);
}

void CausalGraph::unorient(std::size_t a, std::size_t b) {
  check(a, b);
  if (!adjacent(a, b)) throw Error(Errc::EdgeNotFound, "no edge between '" + name(a) + "' and '" + name(b) + "'");
  add_undirected(a, b);
}

std::vector<std::size_t> CausalGraph::adjacents(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (b != a && adjacent(a, b)) out.push_back(b);
  return out;
}

std::vector<std::size_t> CausalGraph::parents(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (b != a && is_directed(b, a)) out.push_back(b);
  return out;
}

std::vector<std::size_t> CausalGraph::children(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (b != a && is_directed(a, b)) out.push_back(b);
  return out;
}

std::vector<std::size_t> CausalGraph::undirected_neighbors(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (b != a && is_undirected(a, b)) out.push_back(b);
  return out;
}

bool CausalGraph::has_directed_path(std::size_t from, std::size_t to) const {
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto c : children(v)) {
      if (c == to) return true;
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
  }
  return false;
}

bool CausalGraph::directed_part_acyclic() const {
  // Kahn's algorithm on the directed edges.
  std::vector<std::size_t> indegree(size(), 0);
  for (std::size_t v = 0; v < size(); ++v) indegree[v] = parents(v).size();
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto c : children(v))
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return visited == size();
}

std::size_t CausalGraph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b) count += adjacent(a, b);
  return count;
}

std::vector<Edge> CausalGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (!adjacent(a, b)) continue;
      if (is_directed(a, b))
        out.push_back({a, b, true, provenance(a, b)});
      else if (is_directed(b, a))
        out.push_back({b, a, true, provenance(b, a)});
      else if (names_[a] < names_[b])
        out.push_back({a, b, false, std::nullopt});
      else
        out.push_back({b, a, false, std::nullopt});
    }
  }
  std::sort(out.begin(), out.end(), [&](const Edge& x, const Edge& y) {
    const auto kx = std::minmax(names_[x.a], names_[x.b]);
    const auto ky = std::minmax(names_[y.a], names_[y.b]);
    return kx < ky;
  });
  return out;
}

bool d_separated(const CausalGraph& dag, std::size_t x, std::size_t y, std::span<const std::size_t> z) {
  const auto n = dag.size();
  std::vector<char> in_z(n, 0);
  for (auto v : z) in_z[v] = 1;
  if (in_z[x] || in_z[y]) return true;

  // Ancestral set of {x, y} and z.
  std::vector<char> relevant(n, 0);
  std::vector<std::size_t> stack{x, y};
  stack.insert(stack.end(), z.begin(), z.end());
  for (auto v : stack) relevant[v] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto p : dag.parents(v))
      if (!relevant[p]) {
        relevant[p] = 1;
        stack.push_back(p);
      }
  }

  // Moralize: connect each node to its parents and co-parents, within the ancestral set.
  std::vector<std::vector<char>> moral(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    if (!relevant[v]) continue;
    const auto ps = dag.parents(v);
    for (auto p : ps) moral[v][p] = moral[p][v] = 1;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) moral[ps[i]][ps[j]] = moral[ps[j]][ps[i]] = 1;
  }

  std::vector<char> seen(n, 0);
  stack = {x};
  seen[x] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v == y) return false;
    for (std::size_t w = 0; w < n; ++w)
      if (moral[v][w] && relevant[w] && !in_z[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return true;
}

DSeparationOracle::DSeparationOracle(CausalGraph dag) : dag_(std::move(dag)) {
  for (std::size_t a = 0; a < dag_.size(); ++a)
    for (std::size_t b = 0; b < dag_.size(); ++b)
      if (a != b && dag_.is_undirected(a, b))
        throw Error(Errc::InvalidArgument, "d-separation oracle needs a fully directed graph");
  if (!dag_.directed_part_acyclic()) throw Error(Errc::InvalidArgument, "d-separation oracle needs an acyclic graph");
}

CITestResult DSeparationOracle::test(std::size_t x, std::size_t y, std::span<const std::size_t> z) const {
  const bool sep = d_separated(dag_, x, y, z);
  return CITestResult{sep ? 0.0 : 1.0, 0.0, sep ? 1.0 : 0.0};
}

namespace {

std::optional<double> fraction_of(const EdgeFractions* fractions, const std::string& a, const std::string& b) {
  if (!fractions) return std::nullopt;
  if (auto it = fractions->find(std::minmax(a, b)); it != fractions->end()) return it->second;
  return std::nullopt;
}

}  // namespace

std::string graph_to_json(const CausalGraph& graph, const EdgeFractions* fractions) {
  nlohmann::ordered_json doc;
  doc["nodes"] = graph.names();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges()) {
    nlohmann::ordered_json item;
    item["a"] = graph.name(e.a);
    item["b"] = graph.name(e.b);
    item["directed"] = e.directed;
    item["provenance"] = e.provenance ? nlohmann::ordered_json(std::string(to_string(*e.provenance))) : nullptr;
    const auto f = fraction_of(fractions, graph.name(e.a), graph.name(e.b));
    item["fraction"] = f ? nlohmann::ordered_json(*f) : nullptr;
    edges.push_back(std::move(item));
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

CausalGraph graph_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    CausalGraph g(doc.at("nodes").get<std::vector<std::string>>());
    for (const auto& e : doc.at("edges")) {
      const auto a = g.index_of(e.at("a").get<std::string>());
      const auto b = g.index_of(e.at("b").get<std::string>());
      if (e.at("directed").get<bool>()) {
        std::optional<EdgeProvenance> prov;
        if (e.contains("provenance") && e.at("provenance").is_string())
          prov = parse_edge_provenance(e.at("provenance").get<std::string>());
        g.add_directed(a, b, prov);
      } else {
        g.add_undirected(a, b);
      }
    }
    if (!g.directed_part_acyclic()) throw Error(Errc::ConfigError, "graph JSON has a directed cycle");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, std::string("malformed graph JSON: ") + e.what());
  }
}

std::string graph_to_dot(const CausalGraph& graph, const EdgeFractions* fractions) {
  std::ostringstream out;
  out << "digraph causal {\n";
  for (const auto& n : graph.names()) out << "  \"" << n << "\";\n";
  for (const auto& e : graph.edges()) {
    out << "  \"" << graph.name(e.a) << "\" -> \"" << graph.name(e.b) << "\"";
    std::vector<std::string> attrs;
    if (!e.directed) attrs.push_back("dir=none");
    if (const auto f = fraction_of(fractions, graph.name(e.a), graph.name(e.b))) {
      attrs.push_back("label=\"" + format_fixed(100.0 * *f, 1) + "%\"");
      if (*f < 1.0) attrs.push_back("style=dashed");
    }
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace lexcausal
