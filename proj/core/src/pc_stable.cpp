#include "lexcausal/pc_stable.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lexcausal/error.hpp"

namespace lexcausal {

void SepsetMap::set(const std::string& a, const std::string& b, std::vector<std::string> sepset) {
  std::sort(sepset.begin(), sepset.end());
  sets_[std::minmax(a, b)] = std::move(sepset);
}

const std::vector<std::string>* SepsetMap::find(const std::string& a, const std::string& b) const {
  auto it = sets_.find(std::minmax(a, b));
  return it == sets_.end() ? nullptr : &it->second;
}

bool SepsetMap::contains(const std::string& a, const std::string& b, const std::string& c) const {
  const auto* s = find(a, b);
  return s && std::binary_search(s->begin(), s->end(), c);
}

namespace {

// Advances idx to the next k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t pos = k;
  while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
  if (pos == 0) return false;
  ++idx[pos - 1];
  for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::string describe(const std::vector<std::string>& names, std::size_t x, std::size_t y,
                     const std::vector<std::size_t>& z) {
  std::string s = names[x] + " _||_ " + names[y] + " | {";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? ", " : "") + names[z[i]];
  return s + "}";
}

}  // namespace

Skeleton pc_stable_skeleton(const CITest& test, const PCOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in (0,1)");
  const auto& names = test.variable_names();
  const std::size_t n = names.size();

  // Canonical order: node indices sorted by name.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  auto by_rank = [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; };

  Skeleton out;
  out.graph = CausalGraph::complete(names);

  for (std::size_t level = 0;; ++level) {
    if (options.max_conditioning && level > *options.max_conditioning) break;
    std::vector<std::vector<std::size_t>> frozen(n);
    for (std::size_t v = 0; v < n; ++v) {
      frozen[v] = out.graph.adjacents(v);
      std::sort(frozen[v].begin(), frozen[v].end(), by_rank);
    }

    bool any_testable = false;
    for (std::size_t ru = 0; ru < n; ++ru) {
      for (std::size_t rv = ru + 1; rv < n; ++rv) {
        const auto u = order[ru];
        const auto v = order[rv];
        if (!out.graph.adjacent(u, v)) continue;

        std::set<std::vector<std::size_t>> tried;
        bool removed = false;
        for (const auto side : {u, v}) {
          const auto other = side == u ? v : u;
          std::vector<std::size_t> candidates;
          for (auto w : frozen[side])
            if (w != other) candidates.push_back(w);
          if (candidates.size() < level) continue;
          any_testable = true;

          std::vector<std::size_t> idx(level);
          std::iota(idx.begin(), idx.end(), 0);
          do {
            std::vector<std::size_t> cond;
            cond.reserve(level);
            for (auto i : idx) cond.push_back(candidates[i]);
            if (!tried.insert(cond).second) continue;
            CITestResult result;
            try {
              result = test.test(u, v, cond);
            } catch (const Error& e) {
              throw Error(Errc::CITestFailure, describe(names, u, v, cond) + ": " + e.what());
            }
            ++out.tests_run;
            if (result.independent_at(options.alpha)) {
              out.graph.remove_edge(u, v);
              std::vector<std::string> sep;
              for (auto c : cond) sep.push_back(names[c]);
              out.sepsets.set(names[u], names[v], std::move(sep));
              removed = true;
              break;
            }
          } while (next_combination(idx, candidates.size()));
          if (removed) break;
        }
      }
    }
    if (!any_testable) break;
  }
  return out;
}

CausalGraph orient_v_structures(const Skeleton& skeleton, std::vector<std::string>* warnings) {
  CausalGraph g = skeleton.graph;
  const auto& names = g.names();
  const std::size_t n = g.size();

  std::set<std::pair<std::size_t, std::size_t>> demanded;  // (tail, head)
  for (std::size_t c = 0; c < n; ++c) {
    const auto adj = skeleton.graph.adjacents(c);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (std::size_t j = i + 1; j < adj.size(); ++j) {
        const auto a = adj[i];
        const auto b = adj[j];
        if (skeleton.graph.adjacent(a, b)) continue;
        if (skeleton.sepsets.contains(names[a], names[b], names[c])) continue;
        demanded.insert({a, c});
        demanded.insert({b, c});
      }
    }
  }

  for (const auto& e : skeleton.graph.edges()) {
    const bool ab = demanded.count({e.a, e.b}) > 0;
    const bool ba = demanded.count({e.b, e.a}) > 0;
    if (ab && ba) {
      if (warnings)
        warnings->push_back("conflicting v-structure orientation on " + names[e.a] + " - " + names[e.b] +
                            "; left undirected");
      continue;
    }
    if (!ab && !ba) continue;
    const auto tail = ab ? e.a : e.b;
    const auto head = ab ? e.b : e.a;
    if (g.has_directed_path(head, tail)) {
      if (warnings)
        warnings->push_back("v-structure orientation " + names[tail] + " -> " + names[head] +
                            " would close a cycle; left undirected");
      continue;
    }
    g.orient(tail, head, EdgeProvenance::v_structure);
  }
  return g;
}

CausalGraph apply_meek_rules(CausalGraph g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return g.name(a) < g.name(b); });

  auto rule_applies = [&](std::size_t a, std::size_t b) {
    // R1: c -> a - b with c, b nonadjacent.
    for (auto c : g.parents(a))
      if (c != b && !g.adjacent(c, b)) return true;
    // R2: a -> c -> b.
    for (auto c : g.children(a))
      if (g.is_directed(c, b)) return true;
    // R3: a - c -> b and a - d -> b with c, d nonadjacent.
    std::vector<std::size_t> mid;
    for (auto c : g.undirected_neighbors(a))
      if (c != b && g.is_directed(c, b)) mid.push_back(c);
    for (std::size_t i = 0; i < mid.size(); ++i)
      for (std::size_t j = i + 1; j < mid.size(); ++j)
        if (!g.adjacent(mid[i], mid[j])) return true;
    // R4: a - c -> d -> b with c, b nonadjacent and a adjacent to d.
    for (auto c : g.undirected_neighbors(a)) {
      if (c == b || g.adjacent(c, b)) continue;
      for (auto d : g.children(c))
        if (d != a && g.is_directed(d, b) && g.adjacent(a, d)) return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto a : order) {
      for (auto b : order) {
        if (a == b || !g.is_undirected(a, b)) continue;
        if (rule_applies(a, b) && !g.has_directed_path(b, a)) {
          g.orient(a, b, EdgeProvenance::meek);
          changed = true;
        }
      }
    }
  }
  return g;
}

CausalGraph manual_orient(CausalGraph g, const std::string& from, const std::string& to) {
  const auto a = g.index_of(from);
  const auto b = g.index_of(to);
  if (!g.adjacent(a, b)) throw Error(Errc::EdgeNotFound, "no edge between '" + from + "' and '" + to + "'");
  if (!g.is_undirected(a, b))
    throw Error(Errc::EdgeNotFound, "edge '" + from + "' - '" + to + "' is already directed");
  if (g.has_directed_path(b, a))
    throw Error(Errc::WouldCreateCycle, "orienting '" + from + "' -> '" + to + "' closes a directed cycle");
  g.orient(a, b, EdgeProvenance::manual);
  return g;
}

PCResult run_pc_stable(const CITest& test, const PCOptions& options) {
  PCResult out;
  out.skeleton = pc_stable_skeleton(test, options);
  out.cpdag = apply_meek_rules(orient_v_structures(out.skeleton, &out.warnings));
  return out;
}

}  // namespace lexcausal
