#include "sawlab/normalform.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

// --- key encoding helpers ---------------------------------------------------

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t read_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

void append_i64(std::string& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

std::int64_t read_i64(const char* p) {
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) {
    u |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return static_cast<std::int64_t>(u);
}

long long floor_div(long long a, long long b) {  // b > 0
  long long q = a / b;
  return (a % b < 0) ? q - 1 : q;
}

// --- strategies -------------------------------------------------------------

// Reduced words. Key: 'F', u32 length, then (u8 index, u8 sign byte) per
// symbol; sign byte 0 = positive, 1 = inverse.
class FreeNormalizer final : public Normalizer {
 public:
  explicit FreeNormalizer(int rank) : rank_(rank) {
    identity_key_ = "F";
    append_u32(identity_key_, 0);
  }

  int generator_count() const override { return rank_; }

  Element apply(const Element& e, GeneratorSymbol s) const override {
    check_symbol(s, rank_);
    const std::string& k = e.key();
    std::uint32_t n = read_u32(k.data() + 1);
    if (n > 0) {
      unsigned char last_index = static_cast<unsigned char>(k[5 + 2 * (n - 1)]);
      unsigned char last_sign = static_cast<unsigned char>(k[5 + 2 * (n - 1) + 1]);
      if (static_cast<int>(last_index) == s.index &&
          (last_sign == 0) == (s.sign < 0)) {
        std::string out = k.substr(0, k.size() - 2);
        std::uint32_t m = n - 1;
        for (int i = 0; i < 4; ++i) out[1 + i] = static_cast<char>((m >> (8 * i)) & 0xff);
        return Element(std::move(out));
      }
    }
    std::string out = k;
    std::uint32_t m = n + 1;
    for (int i = 0; i < 4; ++i) out[1 + i] = static_cast<char>((m >> (8 * i)) & 0xff);
    out.push_back(static_cast<char>(s.index));
    out.push_back(static_cast<char>(s.sign < 0 ? 1 : 0));
    return Element(std::move(out));
  }

 private:
  static void check_symbol(GeneratorSymbol s, int rank) {
    if (s.index < 0 || s.index >= rank) {
      throw InvalidRequestError("generator symbol out of range");
    }
  }

  int rank_;
};

// Z^p / lattice, vectors reduced against a Hermite basis. Key: 'A', u32 p,
// then p little-endian i64 coordinates. Pivot coordinates end up in
// [0, pivot); non-pivot coordinates are free.
class AbelianNormalizer final : public Normalizer {
 public:
  AbelianNormalizer(int p, const std::vector<std::vector<long long>>& relator_rows)
      : p_(p) {
    basis_ = hermite_normal_form(relator_rows, p, &pivots_);
    identity_key_ = encode(std::vector<long long>(static_cast<std::size_t>(p), 0));
  }

  int generator_count() const override { return p_; }

  Element apply(const Element& e, GeneratorSymbol s) const override {
    if (s.index < 0 || s.index >= p_) {
      throw InvalidRequestError("generator symbol out of range");
    }
    std::vector<long long> v = decode(e.key());
    v[static_cast<std::size_t>(s.index)] += s.sign;
    reduce(v);
    return Element(encode(v));
  }

  const std::vector<std::vector<long long>>& basis() const { return basis_; }

 private:
  std::string encode(const std::vector<long long>& v) const {
    std::string out = "A";
    append_u32(out, static_cast<std::uint32_t>(p_));
    for (long long x : v) append_i64(out, x);
    return out;
  }

  std::vector<long long> decode(const std::string& key) const {
    std::vector<long long> v(static_cast<std::size_t>(p_));
    for (int i = 0; i < p_; ++i) v[static_cast<std::size_t>(i)] = read_i64(key.data() + 5 + 8 * i);
    return v;
  }

  void reduce(std::vector<long long>& v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      int j = pivots_[k];
      long long h = basis_[k][static_cast<std::size_t>(j)];
      long long q = floor_div(v[static_cast<std::size_t>(j)], h);
      if (q == 0) continue;
      for (int c = j; c < p_; ++c) {
        v[static_cast<std::size_t>(c)] -= q * basis_[k][static_cast<std::size_t>(c)];
      }
    }
  }

  int p_;
  std::vector<std::vector<long long>> basis_;
  std::vector<int> pivots_;
};

// Componentwise tuples. Key: 'P', u8 factor count, then per factor
// u32 length + factor key.
class DirectProductNormalizer final : public Normalizer {
 public:
  DirectProductNormalizer(std::vector<NormalizerPtr> factors,
                          std::vector<std::pair<int, int>> gen_map)
      : factors_(std::move(factors)), gen_map_(std::move(gen_map)) {
    identity_key_ = "P";
    identity_key_.push_back(static_cast<char>(factors_.size()));
    for (const auto& f : factors_) {
      append_u32(identity_key_, static_cast<std::uint32_t>(f->identity().key().size()));
      identity_key_ += f->identity().key();
    }
  }

  int generator_count() const override { return static_cast<int>(gen_map_.size()); }

  Element apply(const Element& e, GeneratorSymbol s) const override {
    if (s.index < 0 || s.index >= generator_count()) {
      throw InvalidRequestError("generator symbol out of range");
    }
    auto [factor, local] = gen_map_[static_cast<std::size_t>(s.index)];
    std::vector<std::string> parts = split(e.key());
    Element updated =
        factors_[static_cast<std::size_t>(factor)]->apply(
            Element(parts[static_cast<std::size_t>(factor)]), {local, s.sign});
    parts[static_cast<std::size_t>(factor)] = updated.key();
    std::string out = "P";
    out.push_back(static_cast<char>(factors_.size()));
    for (const std::string& part : parts) {
      append_u32(out, static_cast<std::uint32_t>(part.size()));
      out += part;
    }
    return Element(std::move(out));
  }

  // Component i of an element, for projection tests.
  Element project(const Element& e, int factor) const {
    return Element(split(e.key())[static_cast<std::size_t>(factor)]);
  }

 private:
  std::vector<std::string> split(const std::string& key) const {
    std::vector<std::string> parts;
    std::size_t pos = 2;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint32_t len = read_u32(key.data() + pos);
      pos += 4;
      parts.push_back(key.substr(pos, len));
      pos += len;
    }
    return parts;
  }

  std::vector<NormalizerPtr> factors_;
  std::vector<std::pair<int, int>> gen_map_;
};

// Alternating-syllable normal form: each syllable is a non-identity element
// of one factor, adjacent syllables from different factors. Key: 'S',
// u32 syllable count, then per syllable u8 factor + u32 length + factor key.
class FreeProductNormalizer final : public Normalizer {
 public:
  FreeProductNormalizer(std::vector<NormalizerPtr> factors,
                        std::vector<std::pair<int, int>> gen_map)
      : factors_(std::move(factors)), gen_map_(std::move(gen_map)) {
    identity_key_ = "S";
    append_u32(identity_key_, 0);
  }

  int generator_count() const override { return static_cast<int>(gen_map_.size()); }

  Element apply(const Element& e, GeneratorSymbol s) const override {
    if (s.index < 0 || s.index >= generator_count()) {
      throw InvalidRequestError("generator symbol out of range");
    }
    auto [factor, local] = gen_map_[static_cast<std::size_t>(s.index)];
    std::vector<std::pair<int, std::string>> syllables = split(e.key());
    const Normalizer& child = *factors_[static_cast<std::size_t>(factor)];
    if (!syllables.empty() && syllables.back().first == factor) {
      Element updated = child.apply(Element(syllables.back().second), {local, s.sign});
      if (child.is_identity(updated)) {
        syllables.pop_back();
      } else {
        syllables.back().second = updated.key();
      }
    } else {
      Element fresh = child.apply(child.identity(), {local, s.sign});
      if (!child.is_identity(fresh)) {
        syllables.emplace_back(factor, fresh.key());
      }
    }
    return Element(encode(syllables));
  }

 private:
  std::vector<std::pair<int, std::string>> split(const std::string& key) const {
    std::vector<std::pair<int, std::string>> syllables;
    std::uint32_t n = read_u32(key.data() + 1);
    std::size_t pos = 5;
    for (std::uint32_t i = 0; i < n; ++i) {
      int factor = static_cast<unsigned char>(key[pos]);
      ++pos;
      std::uint32_t len = read_u32(key.data() + pos);
      pos += 4;
      syllables.emplace_back(factor, key.substr(pos, len));
      pos += len;
    }
    return syllables;
  }

  static std::string encode(const std::vector<std::pair<int, std::string>>& syllables) {
    std::string out = "S";
    append_u32(out, static_cast<std::uint32_t>(syllables.size()));
    for (const auto& [factor, key] : syllables) {
      out.push_back(static_cast<char>(factor));
      append_u32(out, static_cast<std::uint32_t>(key.size()));
      out += key;
    }
    return out;
  }

  std::vector<NormalizerPtr> factors_;
  std::vector<std::pair<int, int>> gen_map_;
};

bool is_commutator_of(const Word& cyc, int* i, int* j) {
  if (cyc.size() != 4) return false;
  if (!(cyc[2] == cyc[0].inverse() && cyc[3] == cyc[1].inverse())) return false;
  if (cyc[0].index == cyc[1].index) return false;
  *i = cyc[0].index;
  *j = cyc[1].index;
  return true;
}

NormalizerPtr build_presented(const GroupPresentation& pres) {
  PresentationAnalysis a = analyze_presentation(pres);
  const int p = pres.generator_count();
  switch (a.kind) {
    case PresentationAnalysis::Kind::Free:
      return std::make_shared<FreeNormalizer>(p);
    case PresentationAnalysis::Kind::Abelian: {
      std::vector<std::vector<long long>> rows;
      for (const Word& rel : pres.relators) {
        std::vector<long long> row(static_cast<std::size_t>(p), 0);
        for (const GeneratorSymbol& s : rel) row[static_cast<std::size_t>(s.index)] += s.sign;
        rows.push_back(std::move(row));
      }
      return std::make_shared<AbelianNormalizer>(p, rows);
    }
    case PresentationAnalysis::Kind::PowerFactors: {
      std::vector<NormalizerPtr> factors;
      std::vector<std::pair<int, int>> gen_map;
      for (int i = 0; i < p; ++i) {
        long m = a.factor_orders[static_cast<std::size_t>(i)];
        std::vector<std::vector<long long>> rows;
        if (m > 0) rows.push_back({m});
        factors.push_back(std::make_shared<AbelianNormalizer>(1, rows));
        gen_map.emplace_back(i, 0);
      }
      return std::make_shared<FreeProductNormalizer>(std::move(factors), std::move(gen_map));
    }
    case PresentationAnalysis::Kind::Unsupported:
      break;
  }
  throw UnsupportedPresentationError(
      "no exact word-problem strategy for this presentation");
}

NormalizerPtr build(const GroupSpec::Node& node) {
  if (const auto* n = std::get_if<FreeGroupNode>(&node)) {
    return std::make_shared<FreeNormalizer>(n->rank);
  }
  if (const auto* n = std::get_if<FreeAbelianNode>(&node)) {
    return std::make_shared<AbelianNormalizer>(n->rank,
                                               std::vector<std::vector<long long>>{});
  }
  if (const auto* n = std::get_if<CyclicNode>(&node)) {
    return std::make_shared<AbelianNormalizer>(
        1, std::vector<std::vector<long long>>{{n->order}});
  }
  if (const auto* n = std::get_if<DirectProductNode>(&node)) {
    std::vector<NormalizerPtr> factors{build(n->left->node), build(n->right->node)};
    std::vector<std::pair<int, int>> gen_map;
    for (int i = 0; i < n->left->generator_count(); ++i) gen_map.emplace_back(0, i);
    for (int i = 0; i < n->right->generator_count(); ++i) gen_map.emplace_back(1, i);
    return std::make_shared<DirectProductNormalizer>(std::move(factors), std::move(gen_map));
  }
  if (const auto* n = std::get_if<FreeProductNode>(&node)) {
    std::vector<NormalizerPtr> factors{build(n->left->node), build(n->right->node)};
    std::vector<std::pair<int, int>> gen_map;
    for (int i = 0; i < n->left->generator_count(); ++i) gen_map.emplace_back(0, i);
    for (int i = 0; i < n->right->generator_count(); ++i) gen_map.emplace_back(1, i);
    return std::make_shared<FreeProductNormalizer>(std::move(factors), std::move(gen_map));
  }
  return build_presented(std::get<PresentedNode>(node).presentation);
}

}  // namespace

std::vector<std::vector<long long>> hermite_normal_form(
    const std::vector<std::vector<long long>>& rows, int columns,
    std::vector<int>* pivot_columns) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : rows) {
    std::vector<mpz_class> r;
    r.reserve(static_cast<std::size_t>(columns));
    for (long long v : row) r.emplace_back(static_cast<long>(v));
    r.resize(static_cast<std::size_t>(columns));
    a.push_back(std::move(r));
  }
  const int n = static_cast<int>(a.size());
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < columns && r < n; ++col) {
    // clear the column below row r by repeated euclidean row reduction
    while (true) {
      int best = -1;
      for (int i = r; i < n; ++i) {
        const mpz_class& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
        if (x == 0) continue;
        if (best < 0 ||
            cmp(abs(x), abs(a[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)])) < 0) {
          best = i;
        }
      }
      if (best < 0) break;
      std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(best)]);
      bool clean = true;
      const auto& prow = a[static_cast<std::size_t>(r)];
      mpz_class pivot = prow[static_cast<std::size_t>(col)];
      for (int i = r + 1; i < n; ++i) {
        auto& row = a[static_cast<std::size_t>(i)];
        if (row[static_cast<std::size_t>(col)] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), row[static_cast<std::size_t>(col)].get_mpz_t(),
                   pivot.get_mpz_t());
        for (int c = 0; c < columns; ++c) {
          row[static_cast<std::size_t>(c)] -= q * prow[static_cast<std::size_t>(c)];
        }
        if (row[static_cast<std::size_t>(col)] != 0) clean = false;
      }
      if (clean) break;
    }
    auto& prow = a[static_cast<std::size_t>(r)];
    if (prow[static_cast<std::size_t>(col)] == 0) continue;
    if (prow[static_cast<std::size_t>(col)] < 0) {
      for (auto& x : prow) x = -x;
    }
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < r; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), row[static_cast<std::size_t>(col)].get_mpz_t(),
                 prow[static_cast<std::size_t>(col)].get_mpz_t());
      if (q == 0) continue;
      for (int c = 0; c < columns; ++c) {
        row[static_cast<std::size_t>(c)] -= q * prow[static_cast<std::size_t>(c)];
      }
    }
    pivots.push_back(col);
    ++r;
  }

  std::vector<std::vector<long long>> out;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> row;
    for (const mpz_class& x : a[static_cast<std::size_t>(i)]) {
      if (!x.fits_slong_p()) {
        throw std::overflow_error("relator lattice entries exceed 64-bit range");
      }
      row.push_back(x.get_si());
    }
    out.push_back(std::move(row));
  }
  if (pivot_columns) *pivot_columns = pivots;
  return out;
}

PresentationAnalysis analyze_presentation(const GroupPresentation& pres) {
  PresentationAnalysis result;
  const int p = pres.generator_count();

  std::vector<Word> reduced;
  for (const Word& rel : pres.relators) {
    Word cyc = cyclic_reduce(rel);
    if (!cyc.empty()) reduced.push_back(std::move(cyc));
  }
  if (reduced.empty()) {
    result.kind = PresentationAnalysis::Kind::Free;
    return result;
  }

  // abelian iff every generator pair is forced to commute by some relator
  bool abelian = p == 1;
  if (!abelian) {
    std::vector<std::vector<bool>> commutes(static_cast<std::size_t>(p),
                                            std::vector<bool>(static_cast<std::size_t>(p), false));
    for (const Word& cyc : reduced) {
      int i, j;
      if (is_commutator_of(cyc, &i, &j)) {
        commutes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        commutes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
      }
    }
    abelian = true;
    for (int i = 0; i < p && abelian; ++i) {
      for (int j = i + 1; j < p && abelian; ++j) {
        abelian = commutes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
  }
  if (abelian) {
    std::vector<std::vector<long long>> rows;
    for (const Word& rel : pres.relators) {
      std::vector<long long> row(static_cast<std::size_t>(p), 0);
      for (const GeneratorSymbol& s : rel) row[static_cast<std::size_t>(s.index)] += s.sign;
      rows.push_back(std::move(row));
    }
    result.kind = PresentationAnalysis::Kind::Abelian;
    result.lattice = hermite_normal_form(rows, p, &result.pivot_columns);
    result.lattice_is_diagonal = true;
    for (std::size_t k = 0; k < result.lattice.size(); ++k) {
      for (int c = 0; c < p; ++c) {
        if (c != result.pivot_columns[k] &&
            result.lattice[k][static_cast<std::size_t>(c)] != 0) {
          result.lattice_is_diagonal = false;
        }
      }
    }
    return result;
  }

  // free product of cyclic factors: every relator a pure generator power
  std::vector<long> orders(static_cast<std::size_t>(p), 0);
  for (const Word& cyc : reduced) {
    int index = cyc[0].index;
    for (const GeneratorSymbol& s : cyc) {
      if (s.index != index) {
        result.kind = PresentationAnalysis::Kind::Unsupported;
        return result;
      }
    }
    long power = static_cast<long>(cyc.size());
    long& m = orders[static_cast<std::size_t>(index)];
    m = m == 0 ? power : std::gcd(m, power);
  }
  for (long m : orders) {
    if (m == 1) {  // generator collapses to the identity; outside the catalog
      result.kind = PresentationAnalysis::Kind::Unsupported;
      return result;
    }
  }
  result.kind = PresentationAnalysis::Kind::PowerFactors;
  result.factor_orders = std::move(orders);
  return result;
}

NormalizerPtr normalizer_for(const GroupSpec& spec) { return build(spec.node); }

}  // namespace sawlab
