#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sawlab/cayley.hpp"
#include "sawlab/normalform.hpp"
#include "sawlab/presentation.hpp"

namespace sawlab {

// Weight of one step: +1 for the distinguished generator, -1 for its
// inverse, 0 for every other generator.
int edge_weight(GeneratorSymbol s, int distinguished);

enum class WalkKind { Bridge, HalfSpace, Other };

// An enumerated SAW together with its height profile and, for half-space
// walks, its decomposition into strictly decreasing spans.
struct WalkRecord {
  Word word;
  std::vector<Element> vertices;  // n+1 entries, starting at the identity
  std::vector<int> heights;       // h_0 .. h_n
  int span = 0;
  WalkKind kind = WalkKind::Other;
  std::vector<int> span_parts;    // A_1 > ... > A_k
  std::vector<int> break_points;  // n_1 < ... < n_k (n_k = n)

  int length() const { return static_cast<int>(word.size()); }
};

WalkKind classify_heights(std::span<const int> heights);
WalkKind classify_walk(const WalkRecord& rec);

struct Decomposition {
  std::vector<int> span_parts;
  std::vector<int> break_points;
};

// The span-decomposition recursion on a height profile: A_j is the maximal
// alternating rise/fall seen from the previous break point, n_j the last
// position attaining it, stopping once n_k reaches the end. With `strict`
// the profile must belong to a half-space walk.
Decomposition decompose_heights(std::span<const int> heights, bool strict = false);
void decompose_half_space(WalkRecord& rec);

// Builds word, vertices, heights, span, kind and (for half-space walks) the
// decomposition; throws InvalidRequestError if the word revisits a vertex.
WalkRecord make_walk_record(const Normalizer& nf, std::optional<int> distinguished,
                            const Word& word);

struct ReflectResult {
  WalkRecord walk;
  bool self_intersected = false;
  int collision_index = -1;  // first step index that revisits a vertex
};

// Keeps the walk up to n_1 and inverts every later step symbol. A
// self-intersection in the image is reported as a falsification witness of
// the class membership of the group, not as an error.
ReflectResult reflect(const Normalizer& nf, int distinguished, const WalkRecord& rec);

// Number of partitions of `a` into distinct positive parts; P_D(0) = 1.
mpz_class partitions_distinct(int a);

struct CountsTable {
  std::string group;
  int n_max = 0;
  bool has_bridge_data = false;
  std::vector<mpz_class> c;  // c_0 .. c_n_max
  std::vector<mpz_class> b;  // bridge totals (b_0 = 1)
  std::vector<mpz_class> h;  // half-space totals (h_0 = 1)
  std::vector<std::vector<mpz_class>> b_by_span;  // [n][A], A = 0..n
  std::vector<std::vector<mpz_class>> h_by_span;
};

struct EnumerationOptions {
  int threads = 1;
  int split_depth = 3;  // DFS prefix depth at which work is split
};

CountsTable count_saws(const GroupSpec& spec, int n_max,
                       const EnumerationOptions& opts = {});
CountsTable count_bridges(const GroupSpec& spec, int n_max,
                          const EnumerationOptions& opts = {});

// Record-level enumeration for the property suites (small lengths).
void for_each_saw(const GroupSpec& spec, int max_len,
                  const std::function<void(const WalkRecord&)>& fn);
std::vector<WalkRecord> half_space_walks(const GroupSpec& spec, int length);

struct CheckLine {
  std::string name;
  int n = -1;
  std::string lhs, rhs;
  bool pass = true;
};

struct VerifyReport {
  std::string title;
  std::vector<CheckLine> checks;
  std::map<std::string, std::string> summary;

  bool all_pass() const;
};

// h_N <= sum_A P_D(A) b_{N,A} <= P_D(N) b_N for every computed N.
VerifyReport verify_step2_inequality(const CountsTable& t);

// beta_N = (ln c_N - ln b_{N+1}) / sqrt(N) <= B. B must exceed pi*sqrt(2/3).
VerifyReport verify_hw_inequality(const CountsTable& t, double hw_constant);
inline constexpr double kHwConstantFloor = 2.5650996603238723;  // pi*sqrt(2/3)

// b_{m+n} >= b_m b_n and c_{m+n} <= c_m c_n.
VerifyReport verify_supermultiplicativity(const CountsTable& t);

// Counts agree below the relative girth; c drops at the girth itself.
VerifyReport verify_quotient_counts(const CountsTable& base, const CountsTable& quot,
                                    const GirthReport& girth);

// Exhaustive reflection-map contract over all half-space walks of length
// <= max_len: strictly decreasing decompositions, images are SAWs in the
// summed class, and the map is injective on each class.
VerifyReport verify_reflection(const GroupSpec& spec, int max_len);

// Type-erased walk substrate so coordinate lattices share the enumeration
// core with Cayley graphs. Vertex handles are opaque byte keys.
class WalkGraph {
 public:
  virtual ~WalkGraph() = default;
  virtual int direction_count() const = 0;
  virtual bool has_heights() const = 0;
  virtual int step_weight(int dir) const = 0;
  virtual std::string root_key() const = 0;
  virtual std::optional<std::string> step(const std::string& key, int dir) const = 0;
};

class CayleyWalkGraph final : public WalkGraph {
 public:
  CayleyWalkGraph(NormalizerPtr nf, std::optional<int> distinguished);

  int direction_count() const override;
  bool has_heights() const override { return distinguished_.has_value(); }
  int step_weight(int dir) const override;
  std::string root_key() const override;
  std::optional<std::string> step(const std::string& key, int dir) const override;

 private:
  NormalizerPtr nf_;
  std::optional<int> distinguished_;
};

// Exact counts by depth-first backtracking; deterministic for every thread
// count (the DFS tree is split at a fixed prefix depth and partial counts
// merge by addition).
CountsTable enumerate_counts(const WalkGraph& g, int n_max, bool with_bridges,
                             const EnumerationOptions& opts);

double log_mpz(const mpz_class& z);
double nth_root(const mpz_class& z, int n);

}  // namespace sawlab
