#include "lexcausal/embedding_store.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lexcausal/error.hpp"

namespace lexcausal {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                     static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

bool read_exact(std::istream& in, void* dst, std::size_t n) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

}  // namespace

void validate(const EmbeddingSet& set) {
  if (set.count() < 1) throw Error(Errc::EmptySet, "embedding set for '" + set.word + "' has no rows");
  if (!set.matrix.allFinite())
    throw Error(Errc::InvalidArgument, "embedding set for '" + set.word + "' contains non-finite values");
}

void write_slve(std::ostream& out, const RowMatrix& matrix) {
  out.write(kSlveMagic, 4);
  put_u32(out, kSlveVersion);
  put_u32(out, static_cast<std::uint32_t>(matrix.cols()));
  put_u32(out, static_cast<std::uint32_t>(matrix.rows()));
  std::vector<char> payload(static_cast<std::size_t>(matrix.size()) * 4);
  std::size_t pos = 0;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(matrix(r, c)));
      for (int b = 0; b < 4; ++b) payload[pos++] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    }
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw Error(Errc::IoError, "failed writing SLVE payload");
}

RowMatrix read_slve(std::istream& in) {
  std::array<unsigned char, 16> header{};
  if (!read_exact(in, header.data(), 4) || std::memcmp(header.data(), kSlveMagic, 4) != 0)
    throw Error(Errc::BadMagic, "missing SLVE magic");
  if (!read_exact(in, header.data() + 4, 12)) throw Error(Errc::TruncatedPayload, "SLVE header truncated");
  const auto version = get_u32(header.data() + 4);
  if (version != kSlveVersion)
    throw Error(Errc::UnsupportedVersion, "SLVE version " + std::to_string(version) + " not supported");
  const auto dim = get_u32(header.data() + 8);
  const auto count = get_u32(header.data() + 12);
  if (dim == 0) throw Error(Errc::DimMismatch, "SLVE dim is zero");

  const std::size_t n_bytes = static_cast<std::size_t>(dim) * count * 4;
  std::vector<unsigned char> payload(n_bytes);
  if (!read_exact(in, payload.data(), n_bytes))
    throw Error(Errc::TruncatedPayload, "SLVE payload shorter than " + std::to_string(count) + " rows of dim " +
                                            std::to_string(dim));
  RowMatrix m(count, dim);
  std::size_t pos = 0;
  for (std::uint32_t r = 0; r < count; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c, pos += 4) m(r, c) = std::bit_cast<float>(get_u32(payload.data() + pos));
  }
  return m;
}

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  write_slve(out, set.matrix);
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  EmbeddingSet set;
  try {
    set.matrix = read_slve(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
  return set;
}

std::filesystem::path slve_path(const std::filesystem::path& root, const std::string& word,
                                const std::string& period) {
  return root / word / (period + ".slve");
}

Manifest write_store(const std::filesystem::path& root, const std::vector<EmbeddingSet>& sets) {
  Manifest manifest;
  for (const auto& s : sets) {
    if (manifest.dim == 0) manifest.dim = static_cast<std::uint32_t>(s.dim());
    if (s.dim() != manifest.dim)
      throw Error(Errc::DimMismatch, "set " + s.word + "/" + s.period + " has dim " + std::to_string(s.dim()) +
                                         ", store dim is " + std::to_string(manifest.dim));
    if (std::find(manifest.periods.begin(), manifest.periods.end(), s.period) == manifest.periods.end())
      manifest.periods.push_back(s.period);
  }
  for (const auto& s : sets) {
    auto it = std::find_if(manifest.words.begin(), manifest.words.end(),
                           [&](const ManifestEntry& e) { return e.word == s.word; });
    if (it == manifest.words.end()) {
      manifest.words.push_back(ManifestEntry{s.word, std::vector<std::uint32_t>(manifest.periods.size(), 0)});
      it = std::prev(manifest.words.end());
    }
    const auto p = std::find(manifest.periods.begin(), manifest.periods.end(), s.period) - manifest.periods.begin();
    it->counts[static_cast<std::size_t>(p)] = static_cast<std::uint32_t>(s.count());
    write_embeddings(s, slve_path(root, s.word, s.period));
  }
  write_manifest(root, manifest);
  return manifest;
}

void write_manifest(const std::filesystem::path& root, const Manifest& manifest) {
  nlohmann::ordered_json doc;
  doc["version"] = kSlveVersion;
  doc["dim"] = manifest.dim;
  doc["periods"] = manifest.periods;
  auto words = nlohmann::ordered_json::array();
  for (const auto& e : manifest.words) {
    nlohmann::ordered_json counts;
    for (std::size_t p = 0; p < manifest.periods.size(); ++p) counts[manifest.periods[p]] = e.counts.at(p);
    words.push_back({{"word", e.word}, {"counts", counts}});
  }
  doc["words"] = words;
  std::filesystem::create_directories(root);
  std::ofstream out(root / kManifestName, std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write manifest under " + root.string());
  out << doc.dump(2) << '\n';
}

Manifest read_manifest(const std::filesystem::path& root) {
  std::ifstream in(root / kManifestName);
  if (!in) throw Error(Errc::IoError, "cannot open manifest " + (root / kManifestName).string());
  Manifest manifest;
  try {
    const auto doc = nlohmann::json::parse(in);
    manifest.dim = doc.at("dim").get<std::uint32_t>();
    manifest.periods = doc.at("periods").get<std::vector<std::string>>();
    for (const auto& w : doc.at("words")) {
      ManifestEntry entry{w.at("word").get<std::string>(), {}};
      for (const auto& p : manifest.periods) entry.counts.push_back(w.at("counts").at(p).get<std::uint32_t>());
      manifest.words.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, "malformed manifest: " + std::string(e.what()));
  }
  return manifest;
}

EmbeddingSet load_embeddings(const std::filesystem::path& root, const Manifest& manifest, const std::string& word,
                             const std::string& period) {
  auto set = read_embeddings(slve_path(root, word, period));
  set.word = word;
  set.period = period;
  if (set.dim() != manifest.dim)
    throw Error(Errc::DimMismatch, word + "/" + period + ": file dim " + std::to_string(set.dim()) +
                                       " differs from manifest dim " + std::to_string(manifest.dim));
  const auto w = std::find_if(manifest.words.begin(), manifest.words.end(),
                              [&](const ManifestEntry& e) { return e.word == word; });
  const auto p = std::find(manifest.periods.begin(), manifest.periods.end(), period);
  if (w != manifest.words.end() && p != manifest.periods.end()) {
    const auto expected = w->counts[static_cast<std::size_t>(p - manifest.periods.begin())];
    if (expected != set.count())
      throw Error(Errc::TruncatedPayload, word + "/" + period + ": manifest lists " + std::to_string(expected) +
                                              " rows, file has " + std::to_string(set.count()));
  }
  return set;
}

}  // namespace lexcausal
