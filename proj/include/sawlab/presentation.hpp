#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sawlab/word.hpp"

namespace sawlab {

// A finitely presented group <generators | relators>, optionally with one
// generator marked as the distinguished infinite-order generator.
struct GroupPresentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  std::optional<int> distinguished;

  int generator_count() const { return static_cast<int>(generator_names.size()); }
};

class GroupSpec;
using SpecPtr = std::shared_ptr<const GroupSpec>;

struct FreeGroupNode {
  int rank = 1;
};
struct FreeAbelianNode {
  int rank = 1;
};
struct CyclicNode {
  long order = 2;
};
struct DirectProductNode {
  SpecPtr left, right;
};
struct FreeProductNode {
  SpecPtr left, right;
};
struct PresentedNode {
  GroupPresentation presentation;  // `distinguished` inside is ignored; the
                                   // GroupSpec root carries the marker
};

// Expression tree over the supported group constructors. The distinguished
// generator, when set, is an index into the flattened generator list.
class GroupSpec {
 public:
  using Node =
      std::variant<FreeGroupNode, FreeAbelianNode, CyclicNode, DirectProductNode,
                   FreeProductNode, PresentedNode>;

  GroupSpec() : node(FreeAbelianNode{1}) {}
  explicit GroupSpec(Node n, std::optional<int> dist = std::nullopt)
      : node(std::move(n)), distinguished(dist) {}

  Node node;
  std::optional<int> distinguished;

  int generator_count() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
};

SpecPtr make_spec(GroupSpec::Node node);

// Signed exponent sums of each generator in each relator.
struct ExponentMatrix {
  int generator_count = 0;                  // p (column count)
  std::vector<std::vector<long long>> rows;  // one row per relator
};

// Bounded class-membership certificate: evidence that the distinguished
// generator has infinite order and that no short trivial word moves it.
struct ClassGReport {
  struct Witness {
    std::string kind;  // "finite_order" | "nonzero_exponent"
    std::string word;
    long long value = 0;  // the power k, or the offending exponent sum
  };

  bool pass = false;
  int cutoff = 0;
  long long identity_words_checked = 0;
  std::vector<Witness> witnesses;
};

// --- operations -----------------------------------------------------------

GroupSpec parse_group_spec(std::string_view text);
std::string render_group_spec(const GroupSpec& spec);

// Left-to-right generator list, with relators contributed by each
// constructor (commutators for abelian parts, g^m for cyclic factors,
// cross-commutators for direct products).
GroupPresentation flatten(const GroupSpec& spec);

ExponentMatrix exponent_matrix(const GroupPresentation& pres);
ExponentMatrix exponent_matrix(const GroupSpec& spec);

// Exact rank over the rationals.
int integer_rank(const ExponentMatrix& m);

// p > r(C)?  Diagnostic only.
bool check_rank_condition(const ExponentMatrix& m);

ClassGReport validate_class_g(const GroupSpec& spec, int cutoff);

}  // namespace sawlab
