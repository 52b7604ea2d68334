// Content-addressed cache: hits, corruption recovery, key separation, and
// the compute-only fallbacks.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jacquet/cache.hpp"

using namespace jacquet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("jacquet_cache_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("cache hits skip the producer and return identical bytes") {
  TempDir tmp;
  Cache c = open_cache(tmp.path.string());
  REQUIRE(c.enabled);
  const nlohmann::json key{{"algebra", "sl3r"}, {"kind", "invariants"}, {"schema_version", 1}};
  int calls = 0;
  auto producer = [&] {
    ++calls;
    return nlohmann::json{{"value", 42}, {"list", {1, 2, 3}}};
  };
  auto first = cache_get_or_compute(c, key, producer);
  auto second = cache_get_or_compute(c, key, producer);
  CHECK(calls == 1);
  CHECK(first == second);
  CHECK(first.dump() == second.dump());
  CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator{}) == 1);
}

TEST_CASE("different parameters never share an entry") {
  TempDir tmp;
  Cache c = open_cache(tmp.path.string());
  nlohmann::json k6{{"kind", "boundary"}, {"truncation", 6}};
  nlohmann::json k8{{"kind", "boundary"}, {"truncation", 8}};
  auto v6 = cache_get_or_compute(c, k6, [] { return nlohmann::json{{"K", 6}}; });
  auto v8 = cache_get_or_compute(c, k8, [] { return nlohmann::json{{"K", 8}}; });
  CHECK(v6 != v8);
  CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator{}) == 2);
  // and each key still reads back its own value
  CHECK(cache_get_or_compute(c, k6, [] { return nlohmann::json{{"K", -1}}; }) == v6);
  CHECK(cache_get_or_compute(c, k8, [] { return nlohmann::json{{"K", -1}}; }) == v8);
}

TEST_CASE("corrupt entries are discarded and recomputed with a warning") {
  TempDir tmp;
  Cache c = open_cache(tmp.path.string());
  const nlohmann::json key{{"kind", "x"}};
  cache_get_or_compute(c, key, [] { return nlohmann::json{{"ok", true}}; });
  // truncate the single cache file
  fs::path entry;
  for (const auto& de : fs::directory_iterator(tmp.path)) entry = de.path();
  std::ofstream(entry, std::ios::trunc) << "{ \"key\": ";
  std::ostringstream log;
  auto again = cache_get_or_compute(c, key, [] { return nlohmann::json{{"ok", true}}; }, &log);
  CHECK(again == nlohmann::json{{"ok", true}});
  CHECK(log.str().find("warning") != std::string::npos);
  // the repaired entry is a hit again
  std::ostringstream quiet;
  cache_get_or_compute(c, key, [] { return nlohmann::json{{"ok", false}}; }, &quiet);
  CHECK(quiet.str().empty());
}

TEST_CASE("a stored entry with a different key is never trusted") {
  TempDir tmp;
  Cache c = open_cache(tmp.path.string());
  const nlohmann::json key{{"kind", "y"}};
  cache_get_or_compute(c, key, [] { return nlohmann::json{{"v", 1}}; });
  fs::path entry;
  for (const auto& de : fs::directory_iterator(tmp.path)) entry = de.path();
  std::ofstream(entry, std::ios::trunc)
      << nlohmann::json{{"key", {{"kind", "other"}}}, {"value", {{"v", 999}}}}.dump();
  std::ostringstream log;
  auto v = cache_get_or_compute(c, key, [] { return nlohmann::json{{"v", 1}}; }, &log);
  CHECK(v == nlohmann::json{{"v", 1}});
  CHECK(log.str().find("warning") != std::string::npos);
}

TEST_CASE("absent directory means compute-only") {
  const char* saved = std::getenv("JACQUET_CACHE_DIR");
  ::unsetenv("JACQUET_CACHE_DIR");
  Cache c = open_cache("");
  CHECK_FALSE(c.enabled);
  int calls = 0;
  auto producer = [&] {
    ++calls;
    return nlohmann::json{{"n", calls}};
  };
  cache_get_or_compute(c, nlohmann::json{{"k", 1}}, producer);
  cache_get_or_compute(c, nlohmann::json{{"k", 1}}, producer);
  CHECK(calls == 2);
  if (saved) ::setenv("JACQUET_CACHE_DIR", saved, 1);
}

TEST_CASE("the environment variable supplies the directory") {
  TempDir tmp;
  ::setenv("JACQUET_CACHE_DIR", tmp.path.c_str(), 1);
  Cache c = open_cache("");
  CHECK(c.enabled);
  CHECK(c.dir == tmp.path);
  ::unsetenv("JACQUET_CACHE_DIR");
}
