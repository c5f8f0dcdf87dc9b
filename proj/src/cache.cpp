#include "sawlab/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sawlab/serialize.hpp"
#include "sawlab/version.hpp"

namespace sawlab {

namespace {

// RAII flock on a descriptor we own.
class FileLock {
 public:
  FileLock(const std::string& path, int open_flags, int lock_op) {
    fd_ = ::open(path.c_str(), open_flags, 0644);
    if (fd_ >= 0) ::flock(fd_, lock_op);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

}  // namespace

CountsCache::CountsCache(std::string path) : path_(std::move(path)) { load(); }

std::string CountsCache::key_of(const std::string& group, int distinguished, int n) {
  return group + "\x1f" + std::to_string(distinguished) + "\x1f" + std::to_string(n);
}

void CountsCache::load() {
  FileLock lock(path_, O_RDONLY, LOCK_SH);
  if (lock.fd() < 0) return;  // no cache file yet
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (j.value("v", std::string()) != kEngineVersion) continue;
    std::string group = j.value("g", std::string());
    int dist = j.value("d", -1);
    int n = j.value("n", -1);
    if (group.empty() || n < 0 || !j.contains("c")) continue;
    Row row;
    row.c = mpz_class(j["c"].get<std::string>());
    if (j.contains("b") && j.contains("h")) {
      row.has_bridges = true;
      for (const auto& x : j["b"]) row.b_row.emplace_back(x.get<std::string>());
      for (const auto& x : j["h"]) row.h_row.emplace_back(x.get<std::string>());
    }
    std::string key = key_of(group, dist, n);
    auto it = rows_.find(key);
    if (it == rows_.end() || (!it->second.has_bridges && row.has_bridges)) {
      rows_[key] = std::move(row);
    }
  }
}

std::optional<CountsTable> CountsCache::lookup(const std::string& group,
                                               std::optional<int> distinguished,
                                               int n_max, bool need_bridges) const {
  CountsTable t;
  t.group = group;
  t.n_max = n_max;
  t.has_bridge_data = need_bridges;
  t.c.assign(static_cast<std::size_t>(n_max) + 1, 0);
  if (need_bridges) {
    t.b.assign(static_cast<std::size_t>(n_max) + 1, 0);
    t.h.assign(static_cast<std::size_t>(n_max) + 1, 0);
    t.b_by_span.resize(static_cast<std::size_t>(n_max) + 1);
    t.h_by_span.resize(static_cast<std::size_t>(n_max) + 1);
  }
  for (int n = 0; n <= n_max; ++n) {
    auto it = rows_.find(key_of(group, distinguished.value_or(-1), n));
    if (it == rows_.end()) return std::nullopt;
    const Row& row = it->second;
    if (need_bridges && !row.has_bridges) return std::nullopt;
    t.c[static_cast<std::size_t>(n)] = row.c;
    if (need_bridges) {
      if (row.b_row.size() != static_cast<std::size_t>(n) + 1) return std::nullopt;
      t.b_by_span[static_cast<std::size_t>(n)] = row.b_row;
      t.h_by_span[static_cast<std::size_t>(n)] = row.h_row;
      for (const mpz_class& x : row.b_row) t.b[static_cast<std::size_t>(n)] += x;
      for (const mpz_class& x : row.h_row) t.h[static_cast<std::size_t>(n)] += x;
    }
  }
  return t;
}

void CountsCache::append(const CountsTable& t, std::optional<int> distinguished) {
  std::string payload;
  for (int n = 0; n <= t.n_max; ++n) {
    std::string key = key_of(t.group, distinguished.value_or(-1), n);
    auto it = rows_.find(key);
    if (it != rows_.end() && (it->second.has_bridges || !t.has_bridge_data)) continue;

    Json j;
    j["v"] = kEngineVersion;
    j["g"] = t.group;
    j["d"] = distinguished.value_or(-1);
    j["n"] = n;
    j["c"] = t.c[static_cast<std::size_t>(n)].get_str();
    Row row;
    row.c = t.c[static_cast<std::size_t>(n)];
    if (t.has_bridge_data) {
      Json b = Json::array(), h = Json::array();
      for (const mpz_class& x : t.b_by_span[static_cast<std::size_t>(n)]) {
        b.push_back(x.get_str());
        row.b_row.push_back(x);
      }
      for (const mpz_class& x : t.h_by_span[static_cast<std::size_t>(n)]) {
        h.push_back(x.get_str());
        row.h_row.push_back(x);
      }
      j["b"] = std::move(b);
      j["h"] = std::move(h);
      row.has_bridges = true;
    }
    payload += j.dump();
    payload += '\n';
    rows_[key] = std::move(row);
  }
  if (payload.empty()) return;

  FileLock lock(path_, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
  if (lock.fd() < 0) return;  // cache directory unwritable; skip silently
  ssize_t ignored = ::write(lock.fd(), payload.data(), payload.size());
  (void)ignored;
}

}  // namespace sawlab
