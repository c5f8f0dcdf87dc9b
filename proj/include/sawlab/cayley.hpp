#pragma once

#include <optional>
#include <vector>

#include "sawlab/normalform.hpp"
#include "sawlab/presentation.hpp"

namespace sawlab {

// Radius-r ball around the identity, as a rooted, edge-labeled digraph.
struct Ball {
  struct Edge {
    int from = 0;
    int to = 0;
    GeneratorSymbol label;
  };

  int generator_count = 0;
  int radius = 0;
  std::vector<Element> vertices;  // BFS layer order, key-sorted within a layer
  std::vector<int> distances;     // parallel to vertices
  std::vector<Edge> edges;        // ordered by (from, label rank)
};

Ball ball(const GroupSpec& spec, int radius);

// Rooted, label-preserving isomorphism along the canonical (forced) vertex
// map. For Cayley balls this is equivalent to both groups having the same
// trivial words of length <= 2r.
bool labeled_ball_equal(const Ball& b1, const Ball& b2);

// All freely reduced words of length <= cutoff that are trivial in the
// group; the finite-radius shadow of a marked group.
struct Fingerprint {
  int generator_count = 0;
  int cutoff = 0;
  std::vector<Word> identity_words;  // sorted by (length, symbol rank); the
                                     // empty word is always present
};

Fingerprint fingerprint(const GroupSpec& spec, int cutoff);

struct FingerprintDistance {
  int agreement_cutoff = 0;  // largest L' <= L at which truncations coincide
  double value = 0.0;        // 2^-L', exactly 0 when they agree at the cutoff
};

FingerprintDistance fingerprint_distance(const Fingerprint& f1, const Fingerprint& f2);

struct GirthReport {
  std::optional<int> value;  // nullopt = above cutoff
  int cutoff = 0;
  Word witness;  // shortest (then lexicographically least) new trivial word
};

// Minimum length of a word trivial in `quot` but not in `base`; throws
// QuotientRelationViolatedError when `quot` is not a quotient of `base`
// within the cutoff.
GirthReport relative_girth(const GroupSpec& base, const GroupSpec& quot, int cutoff);

// Is every trivial word of `base` with length <= cutoff trivial in `quot`?
bool check_quotient_relation(const GroupSpec& base, const GroupSpec& quot, int cutoff);

// The group obtained by adding relators, re-expressed inside the catalog
// (same generator list and distinguished marker). Throws
// UnsupportedQuotientError when the result leaves the catalog.
GroupSpec quotient(const GroupSpec& spec, const std::vector<Word>& extra_relators);

}  // namespace sawlab
