#pragma once

#include <map>
#include <vector>

#include "sawlab/presentation.hpp"
#include "sawlab/word.hpp"

// Independent reference implementations used only by the test suites. None
// of these touch the normalizer/enumeration code paths they check.
namespace sawlab::oracle {

// Naive square-lattice SAW counter on integer coordinates, classifying
// bridges/half-space walks by the x-coordinate profile.
struct SquareTables {
  std::vector<long long> c;                     // c_0..c_N
  std::vector<long long> b, h;                  // totals
  std::vector<std::vector<long long>> b_by_span, h_by_span;  // [n][A]
};
SquareTables square_lattice_walks(int n_max);

// Honeycomb SAW counts in brick-wall coordinates (plain set-based DFS).
std::vector<long long> honeycomb_counts(int n_max);

// Number of partitions into strictly decreasing positive parts, by direct
// enumeration of the tuples.
long long distinct_partitions(int a);

// Rank as the largest k with a nonzero k x k minor (cofactor determinants).
int rank_by_minors(const ExponentMatrix& m);

// Vertex count of the radius-r ball of Z x Z/m (m = 0 gives Z^2), by BFS on
// coordinates.
long long zxzm_ball_size(long m, int r);

// Bounded word-problem oracle: folds the freely-reduced word tree of the
// given radius by the presentation's relators (congruence closure plus
// relator cycles walked through the folded graph) until stable. Words are
// equal when their tree nodes land in one class.
class FoldingOracle {
 public:
  FoldingOracle(const GroupPresentation& pres, int radius);

  bool equal(const Word& u, const Word& v);
  bool is_identity(const Word& u) { return equal(u, Word{}); }

 private:
  int find(int x);
  void unite(int a, int b);
  int node_of(const Word& reduced) const;

  int p_;
  int radius_;
  std::vector<Word> relators_;           // includes inverses
  std::vector<std::vector<int>> child_;  // tree children per symbol rank
  std::vector<int> uf_;
};

}  // namespace sawlab::oracle
