#pragma once

// Shared state for slice computations: an in-process memo, an optional
// on-disk slice cache, and the worker count for degreewise parallelism.

#include "pucohom/ring.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pucohom {

struct CacheKey {
  std::string kind;
  std::int64_t p = 0;
  int degree = 0;
  std::string ring;
  std::string gens;  // generator-table hash

  // v1;kind=<k>;p=<p>;deg=<d>;ring=<r>;gens=<hash>
  std::string header() const;
  std::string file_name() const;
};

// One file per key. A file is a header line, the payload lines, and a
// trailing checksum line; anything that does not validate is a miss.
// Writes go to a temporary file that is renamed into place.
class SliceCache {
 public:
  explicit SliceCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<std::vector<std::string>> load(const CacheKey& key) const;
  void store(const CacheKey& key, const std::vector<std::string>& payload) const;

 private:
  std::filesystem::path dir_;
};

struct EngineOptions {
  std::string cache_dir;  // empty: no disk cache
  unsigned workers = 1;
};

class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  unsigned workers() const { return workers_; }
  const SliceCache* cache() const { return cache_ ? &*cache_ : nullptr; }

  // Memoized value for `key`, computed by `make` on first use. Concurrent
  // callers may both compute; the first stored value wins.
  template <class T>
  std::shared_ptr<const T> memo(const std::string& key, const std::function<T()>& make) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return std::static_pointer_cast<const T>(it->second);
    }
    auto value = std::make_shared<const T>(make());
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(key, value);
    return std::static_pointer_cast<const T>(it->second);
  }

  // Runs fn(0..count-1) on up to workers() threads. The first exception
  // thrown by any call is rethrown after all threads finish.
  void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) const;

 private:
  unsigned workers_;
  std::optional<SliceCache> cache_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const void>> memo_;
};

// Process-wide engine without a disk cache, used by the free functions.
Engine& default_engine();

}  // namespace pucohom
