#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace lexcausal::tools {

struct DemoOptions {
  std::size_t words = 40;
  std::uint32_t dim = 16;
  std::uint64_t seed = 0;
};

struct DemoFiles {
  std::filesystem::path records;
  std::filesystem::path embeddings;
  std::filesystem::path gold;
  std::filesystem::path config;
};

/// Writes a small synthetic corpus under `dir`: records.csv, an embedding
/// store, gold.csv with the planted change per word, and config.json that
/// points at them with output under dir/out. Every 13th word falls below
/// the default occurrence threshold.
DemoFiles write_demo_data(const std::filesystem::path& dir, const DemoOptions& options = {});

}  // namespace lexcausal::tools
