#include "lexcausal/sensitivity.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "lexcausal/error.hpp"
#include "lexcausal/text_io.hpp"

namespace lexcausal {

double SensitivityReport::fraction(const std::string& a, const std::string& b) const {
  const auto key = std::minmax(a, b);
  for (const auto& e : edges)
    if (e.a == key.first && e.b == key.second) return e.fraction;
  return 0.0;
}

EdgeFractions SensitivityReport::fractions() const {
  EdgeFractions out;
  for (const auto& e : edges) out[{e.a, e.b}] = e.fraction;
  return out;
}

std::string SensitivityReport::format_table() const {
  std::vector<std::string> labels;
  std::size_t width = 0;
  for (const auto& e : edges) {
    labels.push_back(e.a + " -- " + e.b);
    width = std::max(width, labels.back().size());
  }
  std::ostringstream out;
  out << "grid: " << alphas.size() << " alpha x " << schemes.size() << " schemes, " << successful << "/"
      << cells.size() << " cells succeeded\n";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    out << labels[i] << std::string(width - labels[i].size() + 3, ' ') << e.present << "/" << successful << " ("
        << format_fixed(100.0 * e.fraction, 1) << "%)";
    if (e.fraction >= solid_threshold)
      out << "  solid";
    else if (e.fraction >= stable_threshold)
      out << "  dashed";
    out << '\n';
  }
  return out.str();
}

std::string SensitivityReport::to_csv() const {
  std::ostringstream out;
  out << "a,b,present,cells,fraction,forward,backward,undirected\n";
  for (const auto& e : edges)
    out << csv_escape(e.a) << ',' << csv_escape(e.b) << ',' << e.present << ',' << successful << ','
        << format_double(e.fraction) << ',' << e.forward << ',' << e.backward << ',' << e.undirected << '\n';
  return out.str();
}

SensitivityReport sensitivity_grid(const TableBuilder& build, const std::vector<double>& alphas,
                                   const std::vector<CategorizationScheme>& schemes,
                                   const SensitivityOptions& options) {
  if (alphas.empty() || schemes.empty()) throw Error(Errc::InvalidArgument, "sensitivity grid is empty");
  if (!(options.stable_threshold > 0.0 && options.stable_threshold <= options.solid_threshold &&
        options.solid_threshold <= 1.0))
    throw Error(Errc::InvalidArgument, "thresholds must satisfy 0 < stable <= solid <= 1");

  SensitivityReport report;
  report.alphas = alphas;
  report.schemes = schemes;
  report.stable_threshold = options.stable_threshold;
  report.solid_threshold = options.solid_threshold;

  // Datasets depend only on the scheme; build each once.
  std::vector<std::optional<MixedCITest>> tests(schemes.size());
  std::vector<std::string> build_errors(schemes.size());
  std::vector<std::string> names;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    try {
      tests[s].emplace(build(schemes[s]), options.ci_bins);
      if (names.empty()) names = tests[s]->variable_names();
    } catch (const Error& e) {
      build_errors[s] = e.what();
    }
  }

  struct Tally {
    std::size_t present = 0, forward = 0, backward = 0, undirected = 0;
    std::map<EdgeProvenance, std::size_t> forward_prov, backward_prov;
  };
  std::map<std::pair<std::string, std::string>, Tally> tally;

  for (const double alpha : alphas) {
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      GridCell cell;
      cell.alpha = alpha;
      cell.scheme_index = s;
      if (!tests[s]) {
        cell.error = build_errors[s];
      } else {
        try {
          cell.result = run_pc_stable(*tests[s], PCOptions{alpha, options.max_conditioning});
          cell.ok = true;
        } catch (const Error& e) {
          cell.error = e.what();
        }
      }
      if (cell.ok) {
        ++report.successful;
        const auto& g = cell.result.cpdag;
        for (const auto& e : g.edges()) {
          const auto& na = g.name(e.a);
          const auto& nb = g.name(e.b);
          auto& t = tally[std::minmax(na, nb)];
          ++t.present;
          if (!e.directed) {
            ++t.undirected;
          } else if (na < nb) {
            ++t.forward;
            ++t.forward_prov[*e.provenance];
          } else {
            ++t.backward;
            ++t.backward_prov[*e.provenance];
          }
        }
        for (const auto& w : cell.result.warnings)
          report.warnings.push_back("alpha=" + format_double(alpha) + " scheme=" + schemes[s].to_string() + ": " + w);
      } else {
        report.warnings.push_back("cell alpha=" + format_double(alpha) + " scheme=" + schemes[s].to_string() +
                                  " failed: " + cell.error);
      }
      report.cells.push_back(std::move(cell));
    }
  }

  if (report.successful == 0) throw Error(Errc::CITestFailure, "every sensitivity grid cell failed");

  for (const auto& [key, t] : tally) {
    EdgeStat stat{key.first, key.second, t.present, t.forward, t.backward, t.undirected,
                  static_cast<double>(t.present) / static_cast<double>(report.successful)};
    report.edges.push_back(stat);
  }

  auto majority = [](const std::map<EdgeProvenance, std::size_t>& m) {
    EdgeProvenance best = EdgeProvenance::v_structure;
    std::size_t count = 0;
    for (const auto& [p, c] : m)
      if (c > count) best = p, count = c;
    return best;
  };

  CausalGraph g(names);
  std::vector<std::tuple<std::size_t, std::size_t, EdgeProvenance>> directed;
  for (const auto& e : report.edges) {
    if (e.fraction < report.stable_threshold) continue;
    const auto a = g.index_of(e.a);
    const auto b = g.index_of(e.b);
    g.add_undirected(a, b);
    const auto& t = tally.at({e.a, e.b});
    if (2 * e.forward > e.present)
      directed.emplace_back(a, b, majority(t.forward_prov));
    else if (2 * e.backward > e.present)
      directed.emplace_back(b, a, majority(t.backward_prov));
  }
  for (const auto& [from, to, prov] : directed) {
    if (g.has_directed_path(to, from)) {
      report.warnings.push_back("majority orientation " + g.name(from) + " -> " + g.name(to) +
                                " would close a cycle; left undirected");
      continue;
    }
    g.orient(from, to, prov);
  }
  for (const auto& [from, to] : options.manual_orientations) {
    try {
      g = manual_orient(g, from, to);
    } catch (const Error& e) {
      if (e.code() == Errc::UnknownNode) throw;
      report.warnings.push_back(std::string("manual orientation skipped: ") + e.what());
    }
  }
  report.final_graph = apply_meek_rules(std::move(g));
  return report;
}

}  // namespace lexcausal
