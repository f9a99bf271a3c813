#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include "lexcausal/random.hpp"

namespace lexcausal::testing {

RowMatrix gaussian_blobs(const RowMatrix& centers, Eigen::Index n_per, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  RowMatrix out(centers.rows() * n_per, centers.cols());
  for (Eigen::Index c = 0; c < centers.rows(); ++c)
    for (Eigen::Index i = 0; i < n_per; ++i)
      for (Eigen::Index j = 0; j < centers.cols(); ++j)
        out(c * n_per + i, j) = centers(c, j) + sigma * standard_normal(rng);
  return out;
}

RowMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = standard_normal(rng);
  return m;
}

std::vector<std::string> node_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

std::vector<CausalGraph> all_dags(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::size_t total = 1;
  for (std::size_t p = 0; p < pairs.size(); ++p) total *= 3;

  std::vector<CausalGraph> out;
  const auto names = node_names(n);
  for (std::size_t code = 0; code < total; ++code) {
    CausalGraph g(names);
    std::size_t c = code;
    for (const auto& [i, j] : pairs) {
      const auto state = c % 3;
      c /= 3;
      if (state == 1) g.add_directed(i, j);
      if (state == 2) g.add_directed(j, i);
    }
    if (g.directed_part_acyclic()) out.push_back(std::move(g));
  }
  return out;
}

std::string MarkovEquivalenceOracle::key(const CausalGraph& dag) {
  const auto n = dag.size();
  std::string k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) k += dag.adjacent(i, j) ? '1' : '0';
  k += '|';
  for (std::size_t c = 0; c < n; ++c) {
    const auto pa = dag.parents(c);
    for (std::size_t x = 0; x < pa.size(); ++x)
      for (std::size_t y = x + 1; y < pa.size(); ++y)
        if (!dag.adjacent(pa[x], pa[y]))
          k += std::to_string(std::min(pa[x], pa[y])) + ">" + std::to_string(c) + "<" +
               std::to_string(std::max(pa[x], pa[y])) + ";";
  }
  return k;
}

MarkovEquivalenceOracle::MarkovEquivalenceOracle(const std::vector<CausalGraph>& dags) {
  if (!dags.empty()) n_ = dags.front().size();
  for (const auto& d : dags) {
    auto& cls = classes_[key(d)];
    if (cls.forward.empty()) cls.forward.assign(n_ * n_, 0);
    ++cls.members;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (d.is_directed(i, j)) ++cls.forward[i * n_ + j];
  }
}

CausalGraph MarkovEquivalenceOracle::cpdag(const CausalGraph& dag) const {
  const auto& cls = classes_.at(key(dag));
  CausalGraph g(dag.names());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!dag.adjacent(i, j)) continue;
      if (cls.forward[i * n_ + j] == cls.members)
        g.add_directed(i, j);
      else if (cls.forward[j * n_ + i] == cls.members)
        g.add_directed(j, i);
      else
        g.add_undirected(i, j);
    }
  }
  return g;
}

WordModelData generate_word_model(const WordModelOptions& options) {
  Rng rng(options.seed);
  WordModelData data;
  for (std::size_t i = 0; i < options.n; ++i) {
    std::ostringstream name;
    name << "word" << std::setw(6) << std::setfill('0') << i;
    WordRecord r;
    r.word = name.str();
    const bool nonslang = bernoulli(rng, 0.5);
    r.word_type = nonslang ? WordType::nonslang : WordType::slang;

    // Sense counts: 1 + Poisson with a type-dependent rate (inversion sampling).
    const double lambda = nonslang ? 1.6 : 1.0;
    int k = 0;
    double p = std::exp(-lambda), cdf = p;
    const double u = uniform_unit(rng);
    while (u > cdf && k < 60) {
      ++k;
      p *= lambda / k;
      cdf += p;
    }
    r.polysemy = 1 + k;

    r.pos_fractions = PosFractions{bernoulli(rng, 0.5) ? 0.5 : 0.0, bernoulli(rng, 0.5) ? 0.3 : 0.0,
                                   bernoulli(rng, 0.5) ? 0.1 : 0.0, bernoulli(rng, 0.5) ? 0.1 : 0.0};
    r.tweet_count_p1 = 200;
    r.tweet_count_p2 = 200;

    const double t = nonslang ? 1.0 : 0.0;
    const double s = 0.564 + options.effect_semantic * t + 0.1 * standard_normal(rng);
    const double z = -0.486 + options.effect_shift * t + 1.3 * standard_normal(rng);
    double y = 2.0 + 0.35 * std::log(static_cast<double>(r.polysemy)) + 0.5 * standard_normal(rng);
    if (options.collider) {
      const double a = standard_normal(rng);
      y += 0.3 * a;
      data.aux.push_back(a);
    }
    data.derived[r.word] = DerivedValues{std::exp(y), z, s};
    data.records.push_back(std::move(r));
  }
  return data;
}

TableBuilder word_model_builder(const WordModelData& data) {
  return [&data](const CategorizationScheme& scheme) {
    const auto table = build_table(data.records, data.derived, scheme);
    auto ds = to_dataset(table);
    if (!data.aux.empty()) {
      // Table rows are sorted by word, which matches generation order.
      ds.add_column("aux", VariableKind::continuous, data.aux);
    }
    return ds;
  };
}

}  // namespace lexcausal::testing
