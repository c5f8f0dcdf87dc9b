#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sawlab/presentation.hpp"
#include "sawlab/word.hpp"

namespace sawlab {

// Canonical form of a group element, carried as its serialization key
// (tagged, length-prefixed, little-endian integers; documented in the
// README). Two elements of the same group are equal iff their keys are
// byte-equal.
class Element {
 public:
  Element() = default;
  explicit Element(std::string key) : key_(std::move(key)) {}

  const std::string& key() const { return key_; }

  friend bool operator==(const Element&, const Element&) = default;
  friend bool operator<(const Element& a, const Element& b) { return a.key_ < b.key_; }

 private:
  std::string key_;
};

// A word-problem strategy: maps words to canonical element forms. Stateless
// and immutable after construction; safe for unrestricted concurrent use.
class Normalizer {
 public:
  virtual ~Normalizer() = default;

  virtual int generator_count() const = 0;

  // Canonical form of e * s, one Cayley-graph edge step.
  virtual Element apply(const Element& e, GeneratorSymbol s) const = 0;

  Element identity() const { return Element(identity_key_); }
  bool is_identity(const Element& e) const { return e.key() == identity_key_; }

  Element normalize(const Word& w) const {
    Element e = identity();
    for (const GeneratorSymbol& s : w) e = apply(e, s);
    return e;
  }

 protected:
  std::string identity_key_;
};

using NormalizerPtr = std::shared_ptr<const Normalizer>;

// Exact normalizer for a catalog spec. Presented specs are accepted only
// when they are recognizably free, abelian, or a free product of cyclic
// factors; anything else throws UnsupportedPresentationError.
NormalizerPtr normalizer_for(const GroupSpec& spec);

// What a finite presentation was recognized as.
struct PresentationAnalysis {
  enum class Kind { Free, Abelian, PowerFactors, Unsupported };

  Kind kind = Kind::Unsupported;
  // Abelian: row-echelon lattice basis of the relator lattice in Z^p.
  std::vector<std::vector<long long>> lattice;
  std::vector<int> pivot_columns;
  bool lattice_is_diagonal = false;  // every basis row is m * e_j
  // PowerFactors: per-generator order (0 = infinite).
  std::vector<long> factor_orders;
};

PresentationAnalysis analyze_presentation(const GroupPresentation& pres);

// Row-style Hermite reduction: echelon form, positive pivots on strictly
// increasing columns, entries above each pivot reduced into [0, pivot).
std::vector<std::vector<long long>> hermite_normal_form(
    const std::vector<std::vector<long long>>& rows, int columns,
    std::vector<int>* pivot_columns = nullptr);

}  // namespace sawlab

template <>
struct std::hash<sawlab::Element> {
  std::size_t operator()(const sawlab::Element& e) const noexcept {
    return std::hash<std::string>{}(e.key());
  }
};
