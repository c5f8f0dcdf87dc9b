#pragma once

#include <map>
#include <optional>
#include <string>

#include "sawlab/saw.hpp"

namespace sawlab {

// Append-only JSONL result cache. One record per (group, distinguished, n),
// stamped with the engine version; stale-version records are ignored. The
// file is advisory-locked: exclusive while appending, shared while loading.
class CountsCache {
 public:
  explicit CountsCache(std::string path);

  // Assembles a full table from cached rows, or nullopt when any row (of the
  // required richness) is missing.
  std::optional<CountsTable> lookup(const std::string& group,
                                    std::optional<int> distinguished, int n_max,
                                    bool need_bridges) const;

  // Records every row of `t` not already cached at equal or better richness.
  void append(const CountsTable& t, std::optional<int> distinguished);

  const std::string& path() const { return path_; }

 private:
  struct Row {
    mpz_class c;
    bool has_bridges = false;
    std::vector<mpz_class> b_row, h_row;
  };

  void load();
  static std::string key_of(const std::string& group, int distinguished, int n);

  std::string path_;
  std::map<std::string, Row> rows_;
};

}  // namespace sawlab
