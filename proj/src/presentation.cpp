#include "sawlab/presentation.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "sawlab/errors.hpp"
#include "sawlab/normalform.hpp"

namespace sawlab {

namespace {

int node_generator_count(const GroupSpec::Node& node) {
  struct Visitor {
    int operator()(const FreeGroupNode& n) const { return n.rank; }
    int operator()(const FreeAbelianNode& n) const { return n.rank; }
    int operator()(const CyclicNode&) const { return 1; }
    int operator()(const DirectProductNode& n) const {
      return n.left->generator_count() + n.right->generator_count();
    }
    int operator()(const FreeProductNode& n) const {
      return n.left->generator_count() + n.right->generator_count();
    }
    int operator()(const PresentedNode& n) const {
      return n.presentation.generator_count();
    }
  };
  return std::visit(Visitor{}, node);
}

bool node_equal(const GroupSpec::Node& a, const GroupSpec::Node& b);

bool spec_ptr_equal(const SpecPtr& a, const SpecPtr& b) {
  return node_equal(a->node, b->node);
}

bool node_equal(const GroupSpec::Node& a, const GroupSpec::Node& b) {
  if (a.index() != b.index()) return false;
  if (const auto* fa = std::get_if<FreeGroupNode>(&a)) {
    return fa->rank == std::get<FreeGroupNode>(b).rank;
  }
  if (const auto* ab = std::get_if<FreeAbelianNode>(&a)) {
    return ab->rank == std::get<FreeAbelianNode>(b).rank;
  }
  if (const auto* cy = std::get_if<CyclicNode>(&a)) {
    return cy->order == std::get<CyclicNode>(b).order;
  }
  if (const auto* dp = std::get_if<DirectProductNode>(&a)) {
    const auto& o = std::get<DirectProductNode>(b);
    return spec_ptr_equal(dp->left, o.left) && spec_ptr_equal(dp->right, o.right);
  }
  if (const auto* fp = std::get_if<FreeProductNode>(&a)) {
    const auto& o = std::get<FreeProductNode>(b);
    return spec_ptr_equal(fp->left, o.left) && spec_ptr_equal(fp->right, o.right);
  }
  const auto& pa = std::get<PresentedNode>(a).presentation;
  const auto& pb = std::get<PresentedNode>(b).presentation;
  return pa.generator_names == pb.generator_names && pa.relators == pb.relators;
}

Word commutator(int i, int j) {
  return {{i, +1}, {j, +1}, {i, -1}, {j, -1}};
}

// Assigns fresh single-letter names (then g<N>) left to right; presented
// terms keep their declared names.
class Flattener {
 public:
  GroupPresentation run(const GroupSpec& spec) {
    visit(spec.node);
    out_.distinguished = spec.distinguished;
    return std::move(out_);
  }

 private:
  void visit(const GroupSpec::Node& node) {
    if (const auto* n = std::get_if<FreeGroupNode>(&node)) {
      for (int i = 0; i < n->rank; ++i) add_fresh_name();
    } else if (const auto* n = std::get_if<FreeAbelianNode>(&node)) {
      int base = next_index();
      for (int i = 0; i < n->rank; ++i) add_fresh_name();
      for (int i = 0; i < n->rank; ++i) {
        for (int j = i + 1; j < n->rank; ++j) {
          out_.relators.push_back(commutator(base + i, base + j));
        }
      }
    } else if (const auto* n = std::get_if<CyclicNode>(&node)) {
      int g = next_index();
      add_fresh_name();
      Word power(static_cast<std::size_t>(n->order), GeneratorSymbol{g, +1});
      out_.relators.push_back(std::move(power));
    } else if (const auto* n = std::get_if<DirectProductNode>(&node)) {
      int lbase = next_index();
      visit(n->left->node);
      int rbase = next_index();
      visit(n->right->node);
      int rend = next_index();
      for (int i = lbase; i < rbase; ++i) {
        for (int j = rbase; j < rend; ++j) out_.relators.push_back(commutator(i, j));
      }
    } else if (const auto* n = std::get_if<FreeProductNode>(&node)) {
      visit(n->left->node);
      visit(n->right->node);
    } else {
      const auto& pres = std::get<PresentedNode>(node).presentation;
      int base = next_index();
      for (const std::string& name : pres.generator_names) add_declared_name(name);
      for (const Word& rel : pres.relators) {
        Word shifted = rel;
        for (GeneratorSymbol& s : shifted) s.index += base;
        out_.relators.push_back(std::move(shifted));
      }
    }
  }

  int next_index() const { return static_cast<int>(out_.generator_names.size()); }

  void add_fresh_name() {
    for (char c = 'a'; c <= 'z'; ++c) {
      std::string candidate(1, c);
      if (!used_.count(candidate)) {
        used_.insert(candidate);
        out_.generator_names.push_back(std::move(candidate));
        return;
      }
    }
    for (int k = 0;; ++k) {
      std::string candidate = "g" + std::to_string(k);
      if (!used_.count(candidate)) {
        used_.insert(candidate);
        out_.generator_names.push_back(std::move(candidate));
        return;
      }
    }
  }

  void add_declared_name(const std::string& name) {
    if (used_.count(name)) {
      throw SpecParseError("duplicate generator name '" + name + "'", 0);
    }
    used_.insert(name);
    out_.generator_names.push_back(name);
  }

  GroupPresentation out_;
  std::set<std::string> used_;
};

// --- spec-language parser ---------------------------------------------------

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse() {
    SpecPtr spec = parse_term();
    skip_ws();
    while (!eof() && (peek() == 'x' || peek() == '*')) {
      bool direct = peek() == 'x';
      // 'x' could start a generator name only inside <...>, never here
      ++pos_;
      SpecPtr rhs = parse_term();
      GroupSpec::Node node =
          direct ? GroupSpec::Node(DirectProductNode{spec, rhs})
                 : GroupSpec::Node(FreeProductNode{spec, rhs});
      spec = make_spec(std::move(node));
      skip_ws();
    }
    if (!eof()) throw SpecParseError("unexpected trailing input", pos_);
    if (!marker_ && leading_generator_has_infinite_order(spec->node)) {
      marker_ = 0;  // unmarked specs default to their leading generator
    }
    GroupSpec result(spec->node, marker_);
    return result;
  }

 private:
  static bool leading_generator_has_infinite_order(const GroupSpec::Node& node) {
    if (const auto* dp = std::get_if<DirectProductNode>(&node)) {
      return leading_generator_has_infinite_order(dp->left->node);
    }
    if (const auto* fp = std::get_if<FreeProductNode>(&node)) {
      return leading_generator_has_infinite_order(fp->left->node);
    }
    return std::holds_alternative<FreeAbelianNode>(node) ||
           std::holds_alternative<FreeGroupNode>(node);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char c) {
    if (eof() || peek() != c) {
      throw SpecParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  long parse_int() {
    skip_ws();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw SpecParseError("expected integer", pos_);
    }
    long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) throw SpecParseError("integer too large", pos_);
      ++pos_;
    }
    return v;
  }

  std::string parse_name() {
    skip_ws();
    if (eof() || (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')) {
      throw SpecParseError("expected generator name", pos_);
    }
    std::string name;
    while (!eof() &&
           (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      name += peek();
      ++pos_;
    }
    return name;
  }

  void set_marker(int flat_index) {
    if (marker_.has_value()) {
      throw SpecParseError("more than one distinguished generator marker", pos_);
    }
    marker_ = flat_index;
  }

  SpecPtr parse_term() {
    skip_ws();
    if (eof()) throw SpecParseError("expected group term", pos_);
    char c = peek();
    if (c == 'Z') {
      ++pos_;
      if (!eof() && peek() == '[') {
        ++pos_;
        long m = parse_int();
        skip_ws();
        expect(']');
        if (m < 2) throw SpecParseError("cyclic order must be >= 2", pos_);
        skip_ws();
        if (!eof() && peek() == '!') {
          throw SpecParseError(
              "distinguished marker not allowed on a finite-order generator", pos_);
        }
        next_flat_ += 1;
        return make_spec(CyclicNode{m});
      }
      bool marked = false;
      if (!eof() && peek() == '!') {
        marked = true;
        ++pos_;
      }
      long rank = 1;
      if (!eof() && peek() == '^') {
        ++pos_;
        rank = parse_int();
        if (rank < 1) throw SpecParseError("rank must be >= 1", pos_);
      }
      if (marked) set_marker(next_flat_);  // first coordinate
      next_flat_ += static_cast<int>(rank);
      return make_spec(FreeAbelianNode{static_cast<int>(rank)});
    }
    if (c == 'F') {
      ++pos_;
      long rank = parse_int();
      if (rank < 1) throw SpecParseError("rank must be >= 1", pos_);
      if (!eof() && peek() == '!') {
        ++pos_;
        set_marker(next_flat_);  // first free generator
      }
      next_flat_ += static_cast<int>(rank);
      return make_spec(FreeGroupNode{static_cast<int>(rank)});
    }
    if (c == '<') {
      ++pos_;
      return parse_presented();
    }
    throw SpecParseError("expected 'Z', 'F' or '<'", pos_);
  }

  SpecPtr parse_presented() {
    GroupPresentation pres;
    std::set<std::string> local;
    while (true) {
      std::string name = parse_name();
      if (local.count(name)) {
        throw SpecParseError("duplicate generator name '" + name + "'", pos_);
      }
      local.insert(name);
      pres.generator_names.push_back(name);
      skip_ws();
      if (!eof() && peek() == '!') {
        ++pos_;
        set_marker(next_flat_ + pres.generator_count() - 1);
        skip_ws();
      }
      if (!eof() && peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect('|');
    skip_ws();
    while (!eof() && peek() != '>') {
      std::size_t start = pos_;
      while (!eof() && peek() != ',' && peek() != '>') ++pos_;
      std::string_view chunk = text_.substr(start, pos_ - start);
      try {
        pres.relators.push_back(parse_word(chunk, pres.generator_names));
      } catch (const SpecParseError& e) {
        throw SpecParseError(e.what(), start + e.position());
      }
      skip_ws();
      if (!eof() && peek() == ',') {
        ++pos_;
        skip_ws();
      }
    }
    expect('>');
    next_flat_ += pres.generator_count();
    return make_spec(PresentedNode{std::move(pres)});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int next_flat_ = 0;
  std::optional<int> marker_;
};

// --- renderer ---------------------------------------------------------------

class SpecRenderer {
 public:
  explicit SpecRenderer(std::optional<int> marker) : marker_(marker) {}

  std::string render(const GroupSpec::Node& node) {
    std::string out = render_product(node);
    return out;
  }

 private:
  bool marked_here(int offset, int count, int* local) const {
    if (marker_ && *marker_ >= offset && *marker_ < offset + count) {
      *local = *marker_ - offset;
      return true;
    }
    return false;
  }

  std::string render_product(const GroupSpec::Node& node) {
    if (const auto* n = std::get_if<DirectProductNode>(&node)) {
      std::string l = render_product(n->left->node);
      std::string r = render_term(n->right->node);
      return l + " x " + r;
    }
    if (const auto* n = std::get_if<FreeProductNode>(&node)) {
      std::string l = render_product(n->left->node);
      std::string r = render_term(n->right->node);
      return l + " * " + r;
    }
    return render_term(node);
  }

  std::string render_term(const GroupSpec::Node& node) {
    if (std::holds_alternative<DirectProductNode>(node) ||
        std::holds_alternative<FreeProductNode>(node)) {
      // would need parentheses, which the grammar does not have
      throw std::logic_error("group spec tree is not in renderable (left-nested) form");
    }
    int local = 0;
    if (const auto* n = std::get_if<FreeAbelianNode>(&node)) {
      bool m = marked_here(offset_, n->rank, &local);
      if (m && local != 0) {
        throw std::logic_error("marker on non-leading free-abelian coordinate");
      }
      offset_ += n->rank;
      std::string out = "Z";
      if (m) out += '!';
      if (n->rank > 1) out += "^" + std::to_string(n->rank);
      return out;
    }
    if (const auto* n = std::get_if<FreeGroupNode>(&node)) {
      bool m = marked_here(offset_, n->rank, &local);
      if (m && local != 0) throw std::logic_error("marker on non-leading free generator");
      offset_ += n->rank;
      return "F" + std::to_string(n->rank) + (m ? "!" : "");
    }
    if (const auto* n = std::get_if<CyclicNode>(&node)) {
      if (marked_here(offset_, 1, &local)) {
        throw std::logic_error("marker on finite-order generator");
      }
      offset_ += 1;
      return "Z[" + std::to_string(n->order) + "]";
    }
    const auto& pres = std::get<PresentedNode>(node).presentation;
    int count = pres.generator_count();
    bool m = marked_here(offset_, count, &local);
    offset_ += count;
    std::string out = "<";
    for (int i = 0; i < count; ++i) {
      if (i) out += ",";
      out += pres.generator_names[static_cast<std::size_t>(i)];
      if (m && i == local) out += '!';
    }
    out += " | ";
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      if (i) out += ", ";
      out += render_word(pres.relators[i], pres.generator_names);
    }
    out += ">";
    return out;
  }

  std::optional<int> marker_;
  int offset_ = 0;
};

}  // namespace

int GroupSpec::generator_count() const { return node_generator_count(node); }

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  return a.distinguished == b.distinguished && node_equal(a.node, b.node);
}

SpecPtr make_spec(GroupSpec::Node node) {
  return std::make_shared<const GroupSpec>(std::move(node));
}

GroupSpec parse_group_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string render_group_spec(const GroupSpec& spec) {
  return SpecRenderer(spec.distinguished).render(spec.node);
}

GroupPresentation flatten(const GroupSpec& spec) { return Flattener().run(spec); }

ExponentMatrix exponent_matrix(const GroupPresentation& pres) {
  ExponentMatrix m;
  m.generator_count = pres.generator_count();
  for (const Word& rel : pres.relators) {
    std::vector<long long> row(static_cast<std::size_t>(m.generator_count), 0);
    for (const GeneratorSymbol& s : rel) row[static_cast<std::size_t>(s.index)] += s.sign;
    m.rows.push_back(std::move(row));
  }
  return m;
}

ExponentMatrix exponent_matrix(const GroupSpec& spec) {
  return exponent_matrix(flatten(spec));
}

int integer_rank(const ExponentMatrix& m) {
  const int rows = static_cast<int>(m.rows.size());
  const int cols = m.generator_count;
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    auto& dst = a[static_cast<std::size_t>(i)];
    dst.reserve(static_cast<std::size_t>(cols));
    for (long long v : m.rows[static_cast<std::size_t>(i)]) {
      dst.emplace_back(static_cast<long>(v));
    }
  }
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    auto& prow = a[static_cast<std::size_t>(rank)];
    for (int r = rank + 1; r < rows; ++r) {
      auto& row = a[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)] == 0) continue;
      mpz_class f = row[static_cast<std::size_t>(col)];
      mpz_class g = prow[static_cast<std::size_t>(col)];
      for (int c = col; c < cols; ++c) {
        row[static_cast<std::size_t>(c)] =
            row[static_cast<std::size_t>(c)] * g - prow[static_cast<std::size_t>(c)] * f;
      }
    }
    ++rank;
  }
  return rank;
}

bool check_rank_condition(const ExponentMatrix& m) {
  return m.generator_count > integer_rank(m);
}

ClassGReport validate_class_g(const GroupSpec& spec, int cutoff) {
  if (!spec.distinguished.has_value()) {
    throw InvalidRequestError("no distinguished generator set");
  }
  if (cutoff < 1) throw InvalidRequestError("class-G cutoff must be >= 1");
  auto nf = normalizer_for(spec);
  const int p = spec.generator_count();
  const int s1 = *spec.distinguished;
  GroupPresentation names = flatten(spec);

  ClassGReport report;
  report.cutoff = cutoff;

  // (a) no short power of s1 is trivial
  Element e = nf->identity();
  for (int k = 1; k <= cutoff; ++k) {
    e = nf->apply(e, {s1, +1});
    if (nf->is_identity(e)) {
      Word w(static_cast<std::size_t>(k), GeneratorSymbol{s1, +1});
      report.witnesses.push_back(
          {"finite_order", render_word(w, names.generator_names), k});
      break;
    }
  }

  // (b) every short trivial word has zero signed s1-exponent
  std::vector<Element> stack{nf->identity()};
  std::vector<long long> exponents{0};
  for_each_reduced_word(
      p, cutoff,
      [&](const Word& w) {
        const GeneratorSymbol s = w.back();
        Element next = nf->apply(stack.back(), s);
        stack.push_back(next);
        exponents.push_back(exponents.back() + (s.index == s1 ? s.sign : 0));
        if (nf->is_identity(next)) {
          ++report.identity_words_checked;
          if (exponents.back() != 0 && report.witnesses.size() < 4) {
            report.witnesses.push_back({"nonzero_exponent",
                                        render_word(w, names.generator_names),
                                        exponents.back()});
          }
        }
      },
      [&] {
        stack.pop_back();
        exponents.pop_back();
      });

  report.pass = report.witnesses.empty();
  return report;
}

}  // namespace sawlab
