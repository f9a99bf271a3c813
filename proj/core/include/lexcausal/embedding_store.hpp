#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lexcausal {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Contextualized vectors of one word in one period; one row per occurrence.
struct EmbeddingSet {
  std::string word;
  std::string period;
  RowMatrix matrix;

  Eigen::Index count() const noexcept { return matrix.rows(); }
  Eigen::Index dim() const noexcept { return matrix.cols(); }
};

/// Throws InvalidArgument unless the set is nonempty and every entry finite.
void validate(const EmbeddingSet& set);

// SLVE wire format, little-endian:
//   bytes 0-3 "SLVE" | u32 version (1) | u32 dim | u32 count | count*dim f32 row-major
inline constexpr char kSlveMagic[4] = {'S', 'L', 'V', 'E'};
inline constexpr std::uint32_t kSlveVersion = 1;

void write_slve(std::ostream& out, const RowMatrix& matrix);
RowMatrix read_slve(std::istream& in);

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);
/// word/period are left empty; callers that know them fill them in.
EmbeddingSet read_embeddings(const std::filesystem::path& path);

struct ManifestEntry {
  std::string word;
  std::vector<std::uint32_t> counts;  // parallel to Manifest::periods
};

/// JSON index of an embedding root: <root>/<word>/<period>.slve
struct Manifest {
  std::uint32_t dim = 0;
  std::vector<std::string> periods;
  std::vector<ManifestEntry> words;
};

inline constexpr const char* kManifestName = "manifest.json";

std::filesystem::path slve_path(const std::filesystem::path& root, const std::string& word,
                                const std::string& period);

/// Writes every set and a manifest. All sets must share one dim; the period
/// list is taken in first-seen order.
Manifest write_store(const std::filesystem::path& root, const std::vector<EmbeddingSet>& sets);
Manifest read_manifest(const std::filesystem::path& root);
void write_manifest(const std::filesystem::path& root, const Manifest& manifest);

/// Loads one (word, period) file and checks it against the manifest dim/count.
EmbeddingSet load_embeddings(const std::filesystem::path& root, const Manifest& manifest,
                             const std::string& word, const std::string& period);

}  // namespace lexcausal
