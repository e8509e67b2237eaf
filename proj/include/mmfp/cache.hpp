#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mmfp/spaces.hpp"

namespace mmfp {

inline constexpr const char* kCacheFormatTag = "mmfp-cache-v1";

// On-disk snapshot of a FormSpace basis; round-trips losslessly.
struct CacheEntry {
  std::string format = kCacheFormatTag;
  std::uint64_t p = 0;
  int k = 0;
  bool cuspidal = false;
  std::size_t precision = 0;
  std::vector<std::vector<std::uint64_t>> rows;
};

CacheEntry to_cache_entry(const FormSpace& space);
FormSpace from_cache_entry(const CacheEntry& entry);

// Atomic store (temp file then rename).  IO failures only warn on stderr;
// callers recompute instead of failing.
void cache_store(const CacheEntry& entry, const std::filesystem::path& dir);

// Absent on missing file, parse failure, or format-tag mismatch.
std::optional<CacheEntry> cache_load(std::uint64_t p, int k, bool cuspidal,
                                     const std::filesystem::path& dir);

// Provider that consults the cache, recomputing and overwriting when the
// cached precision is below the request.  Loaded bases are truncated to the
// requested precision so cached and uncached runs emit identical bytes.
SpaceProvider caching_provider(const Prime& p, std::filesystem::path dir);

}  // namespace mmfp
