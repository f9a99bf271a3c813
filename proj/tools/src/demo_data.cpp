#include "lexcausal/tools/demo_data.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "lexcausal/data_model.hpp"
#include "lexcausal/embedding_store.hpp"
#include "lexcausal/error.hpp"
#include "lexcausal/random.hpp"
#include "lexcausal/text_io.hpp"
#include "lexcausal/tools/config.hpp"

namespace lexcausal::tools {

namespace {

std::vector<double> daily_counts(Rng& rng, double rate, std::size_t days) {
  std::vector<double> out;
  for (std::size_t d = 0; d < days; ++d)
    out.push_back(std::max(0.0, std::round(rate + std::sqrt(rate) * standard_normal(rng))));
  return out;
}

}  // namespace

DemoFiles write_demo_data(const std::filesystem::path& dir, const DemoOptions& options) {
  if (options.words < 4 || options.dim < 2) throw Error(Errc::InvalidArgument, "demo data needs >= 4 words, dim >= 2");
  std::filesystem::create_directories(dir);
  Rng rng(options.seed);

  std::vector<WordRecord> records;
  std::vector<EmbeddingSet> sets;
  std::ostringstream gold;
  gold << "word,score\n";
  for (std::size_t i = 0; i < options.words; ++i) {
    std::ostringstream name;
    name << "w" << std::setw(3) << std::setfill('0') << i;
    WordRecord r;
    r.word = name.str();
    const auto slot = i % 10;
    r.word_type = slot < 4 ? WordType::slang : (slot < 9 ? WordType::nonslang : WordType::hybrid);
    r.polysemy = 1 + static_cast<int>(std::floor(std::exp(0.7 + 0.6 * standard_normal(rng))));
    const double noun = 0.3 + 0.6 * uniform_unit(rng);
    const double verb = (1.0 - noun) * uniform_unit(rng);
    const double adv = (1.0 - noun - verb) * 0.3 * uniform_unit(rng);
    r.pos_fractions = PosFractions{noun, verb, adv, std::max(0.0, 1.0 - noun - verb - adv)};

    const double rate = std::exp(3.0 + standard_normal(rng));
    const double shift = (r.word_type == WordType::slang ? -0.5 : 0.5) + standard_normal(rng);
    r.freq_samples_p1 = daily_counts(rng, rate, 30);
    r.freq_samples_p2 = daily_counts(rng, 1.3 * rate * std::exp(shift), 30);

    const bool sparse = i % 13 == 5;
    r.tweet_count_p1 = sparse ? 120 : 150 + static_cast<std::int64_t>(uniform_index(rng, 60));
    r.tweet_count_p2 = 150 + static_cast<std::int64_t>(uniform_index(rng, 60));

    const double change = uniform_unit(rng) + (r.word_type == WordType::nonslang ? 0.1 : 0.0);
    gold << r.word << ',' << format_double(change) << '\n';

    Eigen::VectorXd mu(options.dim), dir_vec(options.dim);
    for (std::uint32_t k = 0; k < options.dim; ++k) mu(k) = standard_normal(rng);
    for (std::uint32_t k = 0; k < options.dim; ++k) dir_vec(k) = standard_normal(rng);
    dir_vec.normalize();
    for (int period = 0; period < 2; ++period) {
      const auto n = period == 0 ? r.tweet_count_p1 : r.tweet_count_p2;
      RowMatrix m(n, options.dim);
      for (Eigen::Index row = 0; row < m.rows(); ++row)
        for (std::uint32_t k = 0; k < options.dim; ++k)
          m(row, k) = mu(k) + (period == 1 ? 2.0 * change * dir_vec(k) : 0.0) + 0.5 * standard_normal(rng);
      sets.push_back(EmbeddingSet{r.word, period == 0 ? "p1" : "p2", std::move(m)});
    }
    records.push_back(std::move(r));
  }

  DemoFiles files{dir / "records.csv", dir / "embeddings", dir / "gold.csv", dir / "config.json"};
  {
    std::ofstream out(files.records, std::ios::trunc);
    write_records_csv(out, records);
  }
  write_store(files.embeddings, sets);
  {
    std::ofstream out(files.gold, std::ios::trunc);
    out << gold.str();
  }
  PipelineConfig config;
  config.records = "records.csv";
  config.embeddings = "embeddings";
  config.gold = "gold.csv";
  config.output_dir = "out";
  config.h = 10;
  config.n_perm = 2000;
  config.seed = options.seed;
  {
    std::ofstream out(files.config, std::ios::trunc);
    out << config_to_json(config);
  }
  return files;
}

}  // namespace lexcausal::tools
