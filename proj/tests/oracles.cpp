#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace sawlab::oracle {

namespace {

struct SquareState {
  int n_max;
  std::vector<std::vector<char>> visited;
  SquareTables tables;

  char& at(int x, int y) {
    return visited[static_cast<std::size_t>(x + n_max + 1)]
                  [static_cast<std::size_t>(y + n_max + 1)];
  }
};

void square_dfs(SquareState& st, int x, int y, int depth, int min_tail, int max_x) {
  if (depth == st.n_max) return;
  static const int dx[4] = {1, -1, 0, 0};
  static const int dy[4] = {0, 0, 1, -1};
  for (int dir = 0; dir < 4; ++dir) {
    int nx = x + dx[dir], ny = y + dy[dir];
    if (st.at(nx, ny)) continue;
    int nmin = std::min(min_tail, nx);
    int nmax = std::max(max_x, nx);
    int nd = depth + 1;
    st.tables.c[static_cast<std::size_t>(nd)] += 1;
    if (nmin > 0) {
      st.tables.h_by_span[static_cast<std::size_t>(nd)][static_cast<std::size_t>(nmax)] += 1;
      if (nmax == nx) {
        st.tables.b_by_span[static_cast<std::size_t>(nd)][static_cast<std::size_t>(nmax)] += 1;
      }
    }
    st.at(nx, ny) = true;
    square_dfs(st, nx, ny, nd, nmin, nmax);
    st.at(nx, ny) = false;
  }
}

}  // namespace

SquareTables square_lattice_walks(int n_max) {
  SquareState st;
  st.n_max = n_max;
  st.visited.assign(static_cast<std::size_t>(2 * n_max + 3),
                    std::vector<char>(static_cast<std::size_t>(2 * n_max + 3), 0));
  st.tables.c.assign(static_cast<std::size_t>(n_max) + 1, 0);
  st.tables.b_by_span.resize(static_cast<std::size_t>(n_max) + 1);
  st.tables.h_by_span.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    st.tables.b_by_span[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
    st.tables.h_by_span[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
  }
  st.tables.c[0] = 1;
  st.tables.b_by_span[0][0] = 1;
  st.tables.h_by_span[0][0] = 1;
  st.at(0, 0) = true;
  square_dfs(st, 0, 0, 0, 1, 0);
  st.tables.b.assign(static_cast<std::size_t>(n_max) + 1, 0);
  st.tables.h.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (int n = 0; n <= n_max; ++n) {
    for (long long v : st.tables.b_by_span[static_cast<std::size_t>(n)]) {
      st.tables.b[static_cast<std::size_t>(n)] += v;
    }
    for (long long v : st.tables.h_by_span[static_cast<std::size_t>(n)]) {
      st.tables.h[static_cast<std::size_t>(n)] += v;
    }
  }
  return st.tables;
}

namespace {

void honeycomb_dfs(std::set<std::pair<int, int>>& visited, std::vector<long long>& c,
                   int x, int y, int depth, int n_max) {
  if (depth == n_max) return;
  int vertical = ((x + y) % 2 + 2) % 2 == 0 ? y + 1 : y - 1;
  const std::pair<int, int> next[3] = {{x + 1, y}, {x - 1, y}, {x, vertical}};
  for (const auto& [nx, ny] : next) {
    if (visited.count({nx, ny})) continue;
    c[static_cast<std::size_t>(depth) + 1] += 1;
    visited.insert({nx, ny});
    honeycomb_dfs(visited, c, nx, ny, depth + 1, n_max);
    visited.erase({nx, ny});
  }
}

}  // namespace

std::vector<long long> honeycomb_counts(int n_max) {
  std::vector<long long> c(static_cast<std::size_t>(n_max) + 1, 0);
  c[0] = 1;
  std::set<std::pair<int, int>> visited{{0, 0}};
  honeycomb_dfs(visited, c, 0, 0, 0, n_max);
  return c;
}

namespace {

long long count_distinct_parts(int remaining, int max_part) {
  if (remaining == 0) return 1;
  long long total = 0;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    total += count_distinct_parts(remaining - part, part - 1);
  }
  return total;
}

long long det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long long total = 0;
  long long sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    total += sign * m[0][col] * det(minor);
    sign = -sign;
  }
  return total;
}

}  // namespace

long long distinct_partitions(int a) { return count_distinct_parts(a, a); }

int rank_by_minors(const ExponentMatrix& m) {
  const int rows = static_cast<int>(m.rows.size());
  const int cols = m.generator_count;
  int best = 0;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<int> rsel(static_cast<std::size_t>(k));
    std::vector<int> csel(static_cast<std::size_t>(k));
    // enumerate k-subsets of rows and columns
    std::function<bool(int, int)> any_nonzero = [&](int ri, int start) -> bool {
      if (ri == k) {
        std::function<bool(int, int)> cols_loop = [&](int ci, int cstart) -> bool {
          if (ci == k) {
            std::vector<std::vector<long long>> sub(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
              for (int j = 0; j < k; ++j) {
                sub[static_cast<std::size_t>(i)].push_back(
                    m.rows[static_cast<std::size_t>(rsel[static_cast<std::size_t>(i)])]
                          [static_cast<std::size_t>(csel[static_cast<std::size_t>(j)])]);
              }
            }
            return det(sub) != 0;
          }
          for (int c = cstart; c < cols; ++c) {
            csel[static_cast<std::size_t>(ci)] = c;
            if (cols_loop(ci + 1, c + 1)) return true;
          }
          return false;
        };
        return cols_loop(0, 0);
      }
      for (int r = start; r < rows; ++r) {
        rsel[static_cast<std::size_t>(ri)] = r;
        if (any_nonzero(ri + 1, r + 1)) return true;
      }
      return false;
    };
    if (any_nonzero(0, 0)) best = k;
  }
  return best;
}

long long zxzm_ball_size(long m, int r) {
  auto normalize = [m](std::pair<long, long> v) {
    if (m > 0) v.second = ((v.second % m) + m) % m;
    return v;
  };
  std::set<std::pair<long, long>> seen{{0, 0}};
  std::deque<std::pair<long, long>> frontier{{0, 0}};
  for (int d = 0; d < r; ++d) {
    std::deque<std::pair<long, long>> next;
    for (const auto& [x, y] : frontier) {
      for (const auto& v : {std::pair<long, long>{x + 1, y},
                            {x - 1, y},
                            {x, y + 1},
                            {x, y - 1}}) {
        auto n = normalize(v);
        if (seen.insert(n).second) next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return static_cast<long long>(seen.size());
}

// --- folding oracle ---------------------------------------------------------

FoldingOracle::FoldingOracle(const GroupPresentation& pres, int radius)
    : p_(pres.generator_count()), radius_(radius) {
  for (const Word& rel : pres.relators) {
    Word r = free_reduce(rel);
    if (r.empty()) continue;
    relators_.push_back(r);
    relators_.push_back(word_inverse(r));
  }

  // freely reduced word tree, breadth-first
  child_.push_back(std::vector<int>(static_cast<std::size_t>(2 * p_), -1));
  std::vector<int> last_rank{-1};  // rank of the symbol leading into the node
  std::deque<std::pair<int, int>> frontier{{0, 0}};  // (node, depth)
  while (!frontier.empty()) {
    auto [node, depth] = frontier.front();
    frontier.pop_front();
    if (depth == radius_) continue;
    for (int r = 0; r < 2 * p_; ++r) {
      int lr = last_rank[static_cast<std::size_t>(node)];
      if (lr >= 0 &&
          GeneratorSymbol::from_rank(lr).inverse() == GeneratorSymbol::from_rank(r)) {
        continue;
      }
      int id = static_cast<int>(child_.size());
      child_[static_cast<std::size_t>(node)][static_cast<std::size_t>(r)] = id;
      child_.push_back(std::vector<int>(static_cast<std::size_t>(2 * p_), -1));
      last_rank.push_back(r);
      frontier.emplace_back(id, depth + 1);
    }
  }

  uf_.resize(child_.size());
  for (std::size_t i = 0; i < uf_.size(); ++i) uf_[i] = static_cast<int>(i);

  // fold to a fixpoint: every class gets at most one target per symbol, and
  // every relator read from any node must come back to where it started
  const int n = static_cast<int>(child_.size());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> trans(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * p_), -1);
    auto reg = [&](int from, int r, int to) {
      int a = find(from), b = find(to);
      int& slot = trans[static_cast<std::size_t>(a) * static_cast<std::size_t>(2 * p_) +
                        static_cast<std::size_t>(r)];
      if (slot < 0) {
        slot = b;
      } else if (find(slot) != b) {
        unite(slot, b);
        changed = true;
      }
    };
    for (int u = 0; u < n; ++u) {
      for (int r = 0; r < 2 * p_; ++r) {
        int c = child_[static_cast<std::size_t>(u)][static_cast<std::size_t>(r)];
        if (c < 0) continue;
        reg(u, r, c);
        reg(c, GeneratorSymbol::from_rank(r).inverse().rank(), u);
      }
    }
    auto step = [&](int cls, int r) {
      int t = trans[static_cast<std::size_t>(cls) * static_cast<std::size_t>(2 * p_) +
                    static_cast<std::size_t>(r)];
      return t < 0 ? -1 : find(t);
    };
    for (int u = 0; u < n; ++u) {
      if (find(u) != u) continue;
      for (const Word& rel : relators_) {
        int cur = u;
        bool complete = true;
        for (const GeneratorSymbol& s : rel) {
          cur = step(cur, s.rank());
          if (cur < 0) {
            complete = false;
            break;
          }
        }
        if (complete && find(cur) != find(u)) {
          unite(cur, u);
          changed = true;
        }
      }
    }
  }
}

int FoldingOracle::find(int x) {
  while (uf_[static_cast<std::size_t>(x)] != x) {
    uf_[static_cast<std::size_t>(x)] = uf_[static_cast<std::size_t>(uf_[static_cast<std::size_t>(x)])];
    x = uf_[static_cast<std::size_t>(x)];
  }
  return x;
}

void FoldingOracle::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) uf_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
}

int FoldingOracle::node_of(const Word& reduced) const {
  int node = 0;
  for (const GeneratorSymbol& s : reduced) {
    node = child_[static_cast<std::size_t>(node)][static_cast<std::size_t>(s.rank())];
    if (node < 0) throw std::out_of_range("word exceeds the oracle tree radius");
  }
  return node;
}

bool FoldingOracle::equal(const Word& u, const Word& v) {
  return find(node_of(free_reduce(u))) == find(node_of(free_reduce(v)));
}

}  // namespace sawlab::oracle
