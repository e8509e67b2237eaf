#include "mmfp/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace mmfp {

namespace {

std::filesystem::path entry_path(std::uint64_t p, int k, bool cuspidal,
                                 const std::filesystem::path& dir) {
  return dir / ("basis_p" + std::to_string(p) + "_k" + std::to_string(k) +
                (cuspidal ? "_S" : "_M") + ".json");
}

std::atomic<unsigned> g_temp_counter{0};

}  // namespace

CacheEntry to_cache_entry(const FormSpace& space) {
  CacheEntry entry;
  entry.p = space.p().value();
  entry.k = space.weight();
  entry.cuspidal = space.cuspidal();
  entry.precision = space.precision();
  entry.rows.resize(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    entry.rows[i].resize(space.precision());
    for (std::size_t j = 0; j < space.precision(); ++j)
      entry.rows[i][j] = space.basis().at(i, j).c0();
  }
  return entry;
}

FormSpace from_cache_entry(const CacheEntry& entry) {
  Prime p(entry.p);
  ExtensionField F(p, 1);
  Mat basis(F.tag(), entry.rows.size(), entry.precision);
  for (std::size_t i = 0; i < entry.rows.size(); ++i) {
    if (entry.rows[i].size() != entry.precision)
      raise(errc::invalid_argument, "cache row length disagrees with precision");
    for (std::size_t j = 0; j < entry.precision; ++j)
      basis.set(i, j, F.element(entry.rows[i][j]));
  }
  return FormSpace(p, entry.k, entry.cuspidal, std::move(basis));
}

void cache_store(const CacheEntry& entry, const std::filesystem::path& dir) {
  try {
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["format"] = entry.format;
    j["p"] = entry.p;
    j["k"] = entry.k;
    j["cuspidal"] = entry.cuspidal;
    j["precision"] = entry.precision;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : entry.rows) {
      nlohmann::json r = nlohmann::json::array();
      for (std::uint64_t v : row) r.push_back(std::to_string(v));
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);

    unsigned serial = g_temp_counter.fetch_add(1);
    std::filesystem::path tmp =
        dir / (".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(serial));
    {
      std::ofstream out(tmp);
      out << j.dump();
      if (!out) throw std::runtime_error("write failed");
    }
    std::filesystem::rename(tmp, entry_path(entry.p, entry.k, entry.cuspidal, dir));
  } catch (const std::exception& e) {
    std::cerr << "warning: cache store failed: " << e.what() << "\n";
  }
}

std::optional<CacheEntry> cache_load(std::uint64_t p, int k, bool cuspidal,
                                     const std::filesystem::path& dir) {
  std::ifstream in(entry_path(p, k, cuspidal, dir));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != kCacheFormatTag) return std::nullopt;
    CacheEntry entry;
    entry.p = j.at("p").get<std::uint64_t>();
    entry.k = j.at("k").get<int>();
    entry.cuspidal = j.at("cuspidal").get<bool>();
    entry.precision = j.at("precision").get<std::size_t>();
    for (const auto& row : j.at("rows")) {
      std::vector<std::uint64_t> r;
      for (const auto& v : row) r.push_back(std::stoull(v.get<std::string>()));
      entry.rows.push_back(std::move(r));
    }
    if (entry.p != p || entry.k != k || entry.cuspidal != cuspidal) return std::nullopt;
    return entry;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

SpaceProvider caching_provider(const Prime& p, std::filesystem::path dir) {
  return [p, dir](int k, bool cuspidal, std::size_t precision) -> FormSpace {
    if (auto entry = cache_load(p.value(), k, cuspidal, dir)) {
      if (entry->precision >= precision) {
        try {
          FormSpace cached = from_cache_entry(*entry);
          Mat truncated(cached.basis().tag(), cached.dimension(), precision);
          for (std::size_t i = 0; i < cached.dimension(); ++i)
            for (std::size_t j = 0; j < precision; ++j)
              truncated.set(i, j, cached.basis().at(i, j));
          return FormSpace(p, k, cuspidal, std::move(truncated));
        } catch (const std::exception& e) {
          std::cerr << "warning: discarding corrupt cache entry: " << e.what() << "\n";
        }
      }
    }
    FormSpace space = miller_basis(k, p, precision, cuspidal);
    cache_store(to_cache_entry(space), dir);
    return space;
  };
}

}  // namespace mmfp
