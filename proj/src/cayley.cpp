#include "sawlab/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

std::vector<std::string> auto_letter_names(int p) {
  std::vector<std::string> names;
  for (int i = 0; i < p; ++i) {
    if (i < 26) {
      names.emplace_back(1, static_cast<char>('a' + i));
    } else {
      names.push_back("g" + std::to_string(i - 26));
    }
  }
  return names;
}

}  // namespace

Ball ball(const GroupSpec& spec, int radius) {
  if (radius < 0) throw InvalidRequestError("ball radius must be >= 0");
  NormalizerPtr nf = normalizer_for(spec);
  const int p = spec.generator_count();

  Ball b;
  b.generator_count = p;
  b.radius = radius;

  std::unordered_map<std::string, int> index_of;
  Element root = nf->identity();
  b.vertices.push_back(root);
  b.distances.push_back(0);
  index_of.emplace(root.key(), 0);

  std::size_t layer_begin = 0;
  for (int d = 1; d <= radius; ++d) {
    std::size_t layer_end = b.vertices.size();
    std::vector<Element> next;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      Element u = b.vertices[i];
      for (int r = 0; r < 2 * p; ++r) {
        Element v = nf->apply(u, GeneratorSymbol::from_rank(r));
        if (!index_of.count(v.key())) {
          index_of.emplace(v.key(), -1);  // reserve; index assigned after sort
          next.push_back(std::move(v));
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (Element& v : next) {
      index_of[v.key()] = static_cast<int>(b.vertices.size());
      b.vertices.push_back(std::move(v));
      b.distances.push_back(d);
    }
    layer_begin = layer_end;
  }

  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    for (int r = 0; r < 2 * p; ++r) {
      GeneratorSymbol s = GeneratorSymbol::from_rank(r);
      Element v = nf->apply(b.vertices[i], s);
      auto it = index_of.find(v.key());
      if (it != index_of.end()) {
        b.edges.push_back({static_cast<int>(i), it->second, s});
      }
    }
  }
  return b;
}

bool labeled_ball_equal(const Ball& b1, const Ball& b2) {
  if (b1.generator_count != b2.generator_count) {
    throw InvalidRequestError("labeled_ball_equal: generator count mismatch");
  }
  if (b1.radius != b2.radius) {
    throw InvalidRequestError("labeled_ball_equal: radius mismatch");
  }
  if (b1.vertices.size() != b2.vertices.size()) return false;

  const int p = b1.generator_count;
  const int n = static_cast<int>(b1.vertices.size());
  auto adjacency = [p, n](const Ball& b) {
    std::vector<int> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * p), -1);
    for (const Ball::Edge& e : b.edges) {
      adj[static_cast<std::size_t>(e.from) * static_cast<std::size_t>(2 * p) +
          static_cast<std::size_t>(e.label.rank())] = e.to;
    }
    return adj;
  };
  std::vector<int> adj1 = adjacency(b1);
  std::vector<int> adj2 = adjacency(b2);

  // grow the forced root-fixing map along labeled edges
  std::vector<int> map12(static_cast<std::size_t>(n), -1);
  std::vector<int> map21(static_cast<std::size_t>(n), -1);
  map12[0] = 0;
  map21[0] = 0;
  std::deque<int> queue{0};
  int mapped = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    int v = map12[static_cast<std::size_t>(u)];
    for (int r = 0; r < 2 * p; ++r) {
      int t1 = adj1[static_cast<std::size_t>(u) * static_cast<std::size_t>(2 * p) +
                    static_cast<std::size_t>(r)];
      int t2 = adj2[static_cast<std::size_t>(v) * static_cast<std::size_t>(2 * p) +
                    static_cast<std::size_t>(r)];
      if ((t1 < 0) != (t2 < 0)) return false;
      if (t1 < 0) continue;
      int& fwd = map12[static_cast<std::size_t>(t1)];
      int& bwd = map21[static_cast<std::size_t>(t2)];
      if (fwd >= 0 || bwd >= 0) {
        if (fwd != t2 || bwd != t1) return false;
        continue;
      }
      fwd = t2;
      bwd = t1;
      ++mapped;
      queue.push_back(t1);
    }
  }
  return mapped == n;
}

Fingerprint fingerprint(const GroupSpec& spec, int cutoff) {
  if (cutoff < 0) throw InvalidRequestError("fingerprint cutoff must be >= 0");
  NormalizerPtr nf = normalizer_for(spec);
  const int p = spec.generator_count();

  Fingerprint f;
  f.generator_count = p;
  f.cutoff = cutoff;
  f.identity_words.push_back({});

  std::vector<Element> stack{nf->identity()};
  for_each_reduced_word(
      p, cutoff,
      [&](const Word& w) {
        stack.push_back(nf->apply(stack.back(), w.back()));
        if (nf->is_identity(stack.back())) f.identity_words.push_back(w);
      },
      [&] { stack.pop_back(); });

  std::sort(f.identity_words.begin(), f.identity_words.end(), word_less);
  return f;
}

FingerprintDistance fingerprint_distance(const Fingerprint& f1, const Fingerprint& f2) {
  if (f1.generator_count != f2.generator_count) {
    throw InvalidRequestError("fingerprint_distance: generator count mismatch");
  }
  if (f1.cutoff != f2.cutoff) {
    throw InvalidRequestError("fingerprint_distance: cutoff mismatch");
  }
  const int cutoff = f1.cutoff;

  // words are sorted by length; compare the per-length slices
  std::size_t i = 0, j = 0;
  int agree = cutoff;
  for (int len = 0; len <= cutoff; ++len) {
    std::size_t i0 = i, j0 = j;
    while (i < f1.identity_words.size() &&
           static_cast<int>(f1.identity_words[i].size()) == len) {
      ++i;
    }
    while (j < f2.identity_words.size() &&
           static_cast<int>(f2.identity_words[j].size()) == len) {
      ++j;
    }
    bool same = (i - i0 == j - j0) &&
                std::equal(f1.identity_words.begin() + static_cast<std::ptrdiff_t>(i0),
                           f1.identity_words.begin() + static_cast<std::ptrdiff_t>(i),
                           f2.identity_words.begin() + static_cast<std::ptrdiff_t>(j0));
    if (!same) {
      agree = len - 1;
      break;
    }
  }

  FingerprintDistance d;
  d.agreement_cutoff = agree;
  d.value = agree == cutoff ? 0.0 : std::exp2(static_cast<double>(-agree));
  return d;
}

namespace {

struct QuotientScan {
  std::optional<Word> new_trivial;  // trivial in quot, not in base
  std::optional<Word> violation;    // trivial in base, not in quot
};

QuotientScan scan_quotient(const GroupSpec& base, const GroupSpec& quot, int cutoff) {
  if (base.generator_count() != quot.generator_count()) {
    throw InvalidRequestError("quotient scan: generator count mismatch");
  }
  NormalizerPtr nb = normalizer_for(base);
  NormalizerPtr nq = normalizer_for(quot);
  const int p = base.generator_count();

  QuotientScan scan;
  std::vector<Element> bstack{nb->identity()};
  std::vector<Element> qstack{nq->identity()};
  auto keep_min = [](std::optional<Word>& best, const Word& w) {
    if (!best || word_less(w, *best)) best = w;
  };
  for_each_reduced_word(
      p, cutoff,
      [&](const Word& w) {
        bstack.push_back(nb->apply(bstack.back(), w.back()));
        qstack.push_back(nq->apply(qstack.back(), w.back()));
        bool tb = nb->is_identity(bstack.back());
        bool tq = nq->is_identity(qstack.back());
        if (tq && !tb) keep_min(scan.new_trivial, w);
        if (tb && !tq) keep_min(scan.violation, w);
      },
      [&] {
        bstack.pop_back();
        qstack.pop_back();
      });
  return scan;
}

}  // namespace

bool check_quotient_relation(const GroupSpec& base, const GroupSpec& quot, int cutoff) {
  return !scan_quotient(base, quot, cutoff).violation.has_value();
}

GirthReport relative_girth(const GroupSpec& base, const GroupSpec& quot, int cutoff) {
  QuotientScan scan = scan_quotient(base, quot, cutoff);
  if (scan.violation) {
    GroupPresentation names = flatten(base);
    throw QuotientRelationViolatedError(
        "not a quotient: base trivial word fails in the candidate quotient",
        render_word(*scan.violation, names.generator_names));
  }
  GirthReport report;
  report.cutoff = cutoff;
  if (scan.new_trivial) {
    report.value = static_cast<int>(scan.new_trivial->size());
    report.witness = *scan.new_trivial;
  }
  return report;
}

namespace {

bool is_provably_abelian(const GroupSpec::Node& node) {
  if (const auto* n = std::get_if<FreeGroupNode>(&node)) return n->rank == 1;
  if (std::holds_alternative<FreeAbelianNode>(node)) return true;
  if (std::holds_alternative<CyclicNode>(node)) return true;
  if (const auto* n = std::get_if<DirectProductNode>(&node)) {
    return is_provably_abelian(n->left->node) && is_provably_abelian(n->right->node);
  }
  if (std::holds_alternative<FreeProductNode>(node)) return false;
  const auto& pres = std::get<PresentedNode>(node).presentation;
  return analyze_presentation(pres).kind == PresentationAnalysis::Kind::Abelian;
}

bool names_are_auto_letters(const std::vector<std::string>& names) {
  return names == auto_letter_names(static_cast<int>(names.size()));
}

GroupSpec::Node presented_node(std::vector<std::string> names, std::vector<Word> relators) {
  GroupPresentation pres;
  pres.generator_names = std::move(names);
  pres.relators = std::move(relators);
  return PresentedNode{std::move(pres)};
}

SpecPtr chain(std::vector<GroupSpec::Node> terms, bool direct) {
  SpecPtr acc = make_spec(std::move(terms.front()));
  for (std::size_t i = 1; i < terms.size(); ++i) {
    SpecPtr rhs = make_spec(std::move(terms[i]));
    if (direct) {
      acc = make_spec(DirectProductNode{acc, rhs});
    } else {
      acc = make_spec(FreeProductNode{acc, rhs});
    }
  }
  return acc;
}

// Re-express an abelian presentation as a catalog tree when its lattice is
// diagonal; otherwise keep the presented form (the normalizer handles it).
GroupSpec::Node catalogify_abelian(const GroupPresentation& merged,
                                   const PresentationAnalysis& analysis) {
  const int p = merged.generator_count();
  if (!analysis.lattice_is_diagonal || !names_are_auto_letters(merged.generator_names)) {
    return presented_node(merged.generator_names, merged.relators);
  }
  std::vector<long long> order(static_cast<std::size_t>(p), 0);
  for (std::size_t k = 0; k < analysis.lattice.size(); ++k) {
    int col = analysis.pivot_columns[k];
    order[static_cast<std::size_t>(col)] = analysis.lattice[k][static_cast<std::size_t>(col)];
  }
  for (long long m : order) {
    if (m == 1) return presented_node(merged.generator_names, merged.relators);
  }
  bool all_free = std::all_of(order.begin(), order.end(), [](long long m) { return m == 0; });
  if (all_free) {
    return FreeAbelianNode{p};
  }
  std::vector<GroupSpec::Node> terms;
  for (long long m : order) {
    if (m == 0) {
      terms.push_back(FreeAbelianNode{1});
    } else {
      terms.push_back(CyclicNode{static_cast<long>(m)});
    }
  }
  if (terms.size() == 1) return terms.front();
  return chain(std::move(terms), /*direct=*/true)->node;
}

GroupSpec::Node catalogify_powers(const GroupPresentation& merged,
                                  const PresentationAnalysis& analysis) {
  if (!names_are_auto_letters(merged.generator_names)) {
    return presented_node(merged.generator_names, merged.relators);
  }
  std::vector<GroupSpec::Node> terms;
  for (long m : analysis.factor_orders) {
    if (m == 0) {
      terms.push_back(FreeAbelianNode{1});
    } else {
      terms.push_back(CyclicNode{m});
    }
  }
  if (terms.size() == 1) return terms.front();
  return chain(std::move(terms), /*direct=*/false)->node;
}

GroupSpec::Node quotient_node(const GroupSpec::Node& node, const std::vector<Word>& extras);

// Route each relator to the factor whose generators support it.
GroupSpec::Node quotient_product(const GroupSpec::Node& node, const SpecPtr& left,
                                 const SpecPtr& right, const std::vector<Word>& extras,
                                 bool direct) {
  const int pl = left->generator_count();
  std::vector<Word> left_extras, right_extras;
  for (const Word& w : extras) {
    bool in_left = true, in_right = true;
    for (const GeneratorSymbol& s : w) {
      if (s.index >= pl) in_left = false;
      if (s.index < pl) in_right = false;
    }
    if (in_left) {
      left_extras.push_back(w);
    } else if (in_right) {
      Word shifted = w;
      for (GeneratorSymbol& s : shifted) s.index -= pl;
      right_extras.push_back(std::move(shifted));
    } else {
      throw UnsupportedQuotientError(
          "relator spans both factors of a product; quotient leaves the catalog");
    }
  }
  SpecPtr new_left =
      left_extras.empty() ? left : make_spec(quotient_node(left->node, left_extras));
  SpecPtr new_right =
      right_extras.empty() ? right : make_spec(quotient_node(right->node, right_extras));
  (void)node;
  if (direct) return DirectProductNode{new_left, new_right};
  return FreeProductNode{new_left, new_right};
}

GroupSpec::Node quotient_node(const GroupSpec::Node& node, const std::vector<Word>& extras) {
  GroupSpec current(node);
  if (is_provably_abelian(node) ||
      std::holds_alternative<FreeGroupNode>(node) ||
      std::holds_alternative<PresentedNode>(node)) {
    GroupPresentation merged = flatten(current);
    for (const Word& w : extras) {
      Word r = free_reduce(w);
      if (!r.empty()) merged.relators.push_back(std::move(r));
    }
    PresentationAnalysis analysis = analyze_presentation(merged);
    switch (analysis.kind) {
      case PresentationAnalysis::Kind::Free:
        if (names_are_auto_letters(merged.generator_names)) {
          return FreeGroupNode{merged.generator_count()};
        }
        return presented_node(merged.generator_names, merged.relators);
      case PresentationAnalysis::Kind::Abelian:
        return catalogify_abelian(merged, analysis);
      case PresentationAnalysis::Kind::PowerFactors:
        return catalogify_powers(merged, analysis);
      case PresentationAnalysis::Kind::Unsupported:
        break;
    }
    throw UnsupportedQuotientError("quotient leaves the supported catalog");
  }
  if (const auto* n = std::get_if<DirectProductNode>(&node)) {
    return quotient_product(node, n->left, n->right, extras, /*direct=*/true);
  }
  if (const auto* n = std::get_if<FreeProductNode>(&node)) {
    return quotient_product(node, n->left, n->right, extras, /*direct=*/false);
  }
  throw UnsupportedQuotientError("quotient leaves the supported catalog");
}

}  // namespace

GroupSpec quotient(const GroupSpec& spec, const std::vector<Word>& extra_relators) {
  const int p = spec.generator_count();
  for (const Word& w : extra_relators) {
    for (const GeneratorSymbol& s : w) {
      if (s.index < 0 || s.index >= p) {
        throw InvalidRequestError("relator symbol out of range");
      }
    }
  }
  std::vector<Word> useful;
  for (const Word& w : extra_relators) {
    if (!free_reduce(w).empty()) useful.push_back(w);
  }
  if (useful.empty()) return spec;
  return GroupSpec(quotient_node(spec.node, useful), spec.distinguished);
}

}  // namespace sawlab
