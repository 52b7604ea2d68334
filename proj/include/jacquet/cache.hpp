// Content-addressed result cache. Entries are JSON files named by a hash of
// the canonical key dump; each file stores the key alongside the value so a
// hash collision or a stale file is detected by comparing keys, never trusted
// blindly. Writers publish with write-to-temp-then-rename so a concurrent
// reader never observes a partial entry. Any I/O trouble degrades to
// compute-only behavior with a warning.
#pragma once

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

namespace jacquet {

struct Cache {
  std::filesystem::path dir;
  bool enabled = false;
};

// Directory resolution order: explicit argument, then JACQUET_CACHE_DIR, then
// disabled. A directory that cannot be created disables caching.
inline Cache open_cache(const std::string& flag_dir, std::ostream* log = &std::cerr) {
  std::string d = flag_dir;
  if (d.empty()) {
    const char* env = std::getenv("JACQUET_CACHE_DIR");
    if (env) d = env;
  }
  if (d.empty()) return {};
  std::error_code ec;
  std::filesystem::create_directories(d, ec);
  if (ec) {
    if (log) *log << "warning: cache directory unusable (" << ec.message() << "); computing without cache\n";
    return {};
  }
  return {d, true};
}

namespace detail {
inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}
}  // namespace detail

template <class F>
nlohmann::json cache_get_or_compute(const Cache& cache, const nlohmann::json& key, F&& producer,
                                    std::ostream* log = &std::cerr) {
  if (!cache.enabled) return producer();
  const std::string keydump = key.dump();
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.json",
                static_cast<unsigned long long>(detail::fnv1a(keydump)));
  const std::filesystem::path path = cache.dir / name;

  std::error_code ec;
  if (std::filesystem::exists(path, ec) && !ec) {
    std::ifstream in(path);
    if (in) {
      nlohmann::json entry = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
      if (!entry.is_discarded() && entry.is_object() && entry.contains("key") &&
          entry.contains("value") && entry["key"] == key)
        return entry["value"];
    }
    if (log) *log << "warning: discarding unreadable or mismatched cache entry " << path << "\n";
  }

  nlohmann::json value = producer();
  const nlohmann::json entry{{"key", key}, {"value", value}};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (out) out << entry.dump(2) << "\n";
    if (!out) {
      if (log) *log << "warning: cache write failed for " << path << "; continuing without cache\n";
      std::filesystem::remove(tmp, ec);
      return value;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    if (log) *log << "warning: cache publish failed for " << path << "; continuing without cache\n";
    std::filesystem::remove(tmp, ec);
  }
  return value;
}

}  // namespace jacquet
