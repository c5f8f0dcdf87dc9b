#include "sawlab/estimate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>

#include "sawlab/errors.hpp"

namespace sawlab {

std::pair<double, int> mu_upper(const CountsTable& t) {
  if (t.n_max < 1) throw InvalidRequestError("mu_upper: empty counts table");
  double best = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n = 1; n <= t.n_max; ++n) {
    const mpz_class& cn = t.c[static_cast<std::size_t>(n)];
    if (cn <= 0) continue;
    double root = nth_root(cn, n);
    if (best_n == 0 || root < best) {
      best = root;
      best_n = n;
    }
  }
  return {best, best_n};
}

std::pair<double, int> mu_lower(const CountsTable& t) {
  if (!t.has_bridge_data) throw InvalidRequestError("mu_lower: table has no bridge data");
  double best = 1.0;
  int best_n = 0;
  for (int n = 1; n <= t.n_max; ++n) {
    const mpz_class& bn = t.b[static_cast<std::size_t>(n)];
    if (bn <= 0) continue;
    double root = nth_root(bn, n);
    if (best_n == 0 || root > best) {
      best = root;
      best_n = n;
    }
  }
  if (best_n == 0) best = 1.0;
  return {best, best_n};
}

MuBracket bracket_from_counts(const CountsTable& t) {
  MuBracket br;
  br.group = t.group;
  br.n_max = t.n_max;
  auto [upper, upper_n] = mu_upper(t);
  br.upper = upper;
  br.upper_n = upper_n;
  if (t.has_bridge_data) {
    auto [lower, lower_n] = mu_lower(t);
    br.lower = lower;
    br.lower_n = lower_n;
    br.lower_is_trivial = lower_n == 0;
  } else {
    br.lower = 1.0;
    br.lower_n = 0;
    br.lower_is_trivial = true;
  }
  return br;
}

MuBracket bracket(const GroupSpec& spec, int n_max, const EnumerationOptions& opts) {
  if (spec.distinguished.has_value()) {
    return bracket_from_counts(count_bridges(spec, n_max, opts));
  }
  return bracket_from_counts(count_saws(spec, n_max, opts));
}

// --- lattice adapters -------------------------------------------------------

namespace {

std::string pack_xy(std::int32_t x, std::int32_t y) {
  std::string key(8, '\0');
  auto ux = static_cast<std::uint32_t>(x);
  auto uy = static_cast<std::uint32_t>(y);
  for (int i = 0; i < 4; ++i) {
    key[static_cast<std::size_t>(i)] = static_cast<char>((ux >> (8 * i)) & 0xff);
    key[static_cast<std::size_t>(4 + i)] = static_cast<char>((uy >> (8 * i)) & 0xff);
  }
  return key;
}

void unpack_xy(const std::string& key, std::int32_t* x, std::int32_t* y) {
  std::uint32_t ux = 0, uy = 0;
  for (int i = 0; i < 4; ++i) {
    ux |= static_cast<std::uint32_t>(static_cast<unsigned char>(key[static_cast<std::size_t>(i)]))
          << (8 * i);
    uy |= static_cast<std::uint32_t>(
              static_cast<unsigned char>(key[static_cast<std::size_t>(4 + i)]))
          << (8 * i);
  }
  *x = static_cast<std::int32_t>(ux);
  *y = static_cast<std::int32_t>(uy);
}

}  // namespace

std::string LatticeAdapter::name() const {
  return kind_ == LatticeKind::Square ? "lattice:square" : "lattice:honeycomb";
}

int LatticeAdapter::direction_count() const {
  return kind_ == LatticeKind::Square ? 4 : 3;
}

std::string LatticeAdapter::root_key() const { return pack_xy(root_x_, root_y_); }

std::optional<std::string> LatticeAdapter::step(const std::string& key, int dir) const {
  std::int32_t x, y;
  unpack_xy(key, &x, &y);
  if (kind_ == LatticeKind::Square) {
    switch (dir) {
      case 0: return pack_xy(x + 1, y);
      case 1: return pack_xy(x - 1, y);
      case 2: return pack_xy(x, y + 1);
      default: return pack_xy(x, y - 1);
    }
  }
  // Honeycomb in brick-wall coordinates: horizontal edges everywhere, a
  // vertical edge upward exactly when x+y is even (degree 3 throughout).
  switch (dir) {
    case 0: return pack_xy(x + 1, y);
    case 1: return pack_xy(x - 1, y);
    default: {
      bool up = ((x + y) % 2 + 2) % 2 == 0;
      return pack_xy(x, up ? y + 1 : y - 1);
    }
  }
}

CountsTable lattice_counts(const LatticeAdapter& adapter, int n_max,
                           const EnumerationOptions& opts) {
  CountsTable t = enumerate_counts(adapter, n_max, /*with_bridges=*/false, opts);
  t.group = adapter.name();

  // transitivity spot-check from two other roots
  const int probe = std::min(n_max, 10);
  if (probe >= 1) {
    const bool square = adapter.kind() == LatticeKind::Square;
    LatticeAdapter alt1(adapter.kind(), 1, 0);
    LatticeAdapter alt2(adapter.kind(), square ? -3 : 2, square ? 2 : 1);
    for (const LatticeAdapter& alt : {alt1, alt2}) {
      CountsTable probe_t = enumerate_counts(alt, probe, false, opts);
      for (int n = 1; n <= probe; ++n) {
        if (probe_t.c[static_cast<std::size_t>(n)] != t.c[static_cast<std::size_t>(n)]) {
          throw std::logic_error("lattice adapter is not vertex-transitive");
        }
      }
    }
  }
  return t;
}

MuBracket lattice_bracket(const LatticeAdapter& adapter, int n_max,
                          const EnumerationOptions& opts) {
  return bracket_from_counts(lattice_counts(adapter, n_max, opts));
}

RelatorTemplate parse_relator_template(std::string_view text, const GroupSpec& base) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  std::size_t caret = compact.find('^');
  if (caret == std::string::npos || compact.substr(caret + 1) != "m") {
    throw SpecParseError("relator template must have the form NAME^m", 0);
  }
  std::string name = compact.substr(0, caret);
  GroupPresentation flat = flatten(base);
  for (int i = 0; i < flat.generator_count(); ++i) {
    if (flat.generator_names[static_cast<std::size_t>(i)] == name) {
      RelatorTemplate tmpl;
      tmpl.generator = i;
      tmpl.text = name + "^m";
      return tmpl;
    }
  }
  throw SpecParseError("relator template names unknown generator '" + name + "'", 0);
}

std::vector<LocalityRow> locality_experiment(const GroupSpec& base,
                                             const RelatorTemplate& relator,
                                             const std::vector<long>& params, int n_max,
                                             int girth_cutoff,
                                             const EnumerationOptions& opts) {
  if (!base.distinguished.has_value()) {
    throw InvalidRequestError("locality experiment needs a distinguished generator");
  }
  CountsTable base_table = count_bridges(base, n_max, opts);
  MuBracket base_bracket = bracket_from_counts(base_table);

  std::vector<LocalityRow> rows;
  for (long m : params) {
    if (m < 1) throw InvalidRequestError("family parameter must be >= 1");
    GroupSpec quot = quotient(base, {relator.instantiate(m)});
    GirthReport girth = relative_girth(base, quot, girth_cutoff);
    CountsTable quot_table = count_bridges(quot, n_max, opts);

    LocalityRow row;
    row.m = m;
    row.rel_girth = girth.value;
    row.girth_cutoff = girth_cutoff;
    row.eq_horizon = 0;
    for (int n = 1; n <= n_max; ++n) {
      if (quot_table.c[static_cast<std::size_t>(n)] !=
          base_table.c[static_cast<std::size_t>(n)]) {
        break;
      }
      row.eq_horizon = n;
    }
    row.quotient_bracket = bracket_from_counts(quot_table);
    row.base_bracket = base_bracket;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sawlab
