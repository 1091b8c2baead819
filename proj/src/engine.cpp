#include "pucohom/engine.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace pucohom {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return out;
}

std::string checksum_line(const std::vector<std::string>& lines) {
  std::string all;
  for (const auto& l : lines) {
    all += l;
    all += '\n';
  }
  return "#fnv1a64=" + hex64(fnv1a(all));
}

}  // namespace

std::string CacheKey::header() const {
  return "v1;kind=" + kind + ";p=" + std::to_string(p) + ";deg=" + std::to_string(degree) + ";ring=" + ring +
         ";gens=" + gens;
}

std::string CacheKey::file_name() const {
  return kind + "-p" + std::to_string(p) + "-d" + std::to_string(degree) + "-" + ring + "-" + gens + ".txt";
}

SliceCache::SliceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::vector<std::string>> SliceCache::load(const CacheKey& key) const {
  std::ifstream in(dir_ / key.file_name(), std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  if (lines.size() < 2 || lines.front() != key.header()) return std::nullopt;
  std::string trailer = lines.back();
  lines.pop_back();
  if (trailer != checksum_line(lines)) return std::nullopt;
  lines.erase(lines.begin());
  return lines;
}

void SliceCache::store(const CacheKey& key, const std::vector<std::string>& payload) const {
  std::vector<std::string> lines;
  lines.reserve(payload.size() + 1);
  lines.push_back(key.header());
  lines.insert(lines.end(), payload.begin(), payload.end());
  const std::string trailer = checksum_line(lines);

  thread_local std::mt19937_64 gen(std::random_device{}());
  auto tmp = dir_ / (key.file_name() + ".tmp" + hex64(gen()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // an unwritable cache only costs recomputation
    for (const auto& l : lines) out << l << '\n';
    out << trailer << '\n';
    if (!out.flush()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dir_ / key.file_name(), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

Engine::Engine(EngineOptions options) : workers_(options.workers == 0 ? 1 : options.workers) {
  if (!options.cache_dir.empty()) cache_.emplace(options.cache_dir);
}

void Engine::parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) const {
  std::size_t threads = std::min<std::size_t>(workers_, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Engine& default_engine() {
  static Engine engine;
  return engine;
}

}  // namespace pucohom
