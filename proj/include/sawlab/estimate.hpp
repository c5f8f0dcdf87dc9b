#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sawlab/saw.hpp"

namespace sawlab {

// Rigorous two-sided bracket for the connective constant: every c_n^{1/n}
// bounds mu from above, every b_n^{1/n} from below.
struct MuBracket {
  std::string group;
  int n_max = 0;
  double lower = 1.0;
  double upper = 0.0;
  int lower_n = 0;  // argmax / argmin (smallest index on ties)
  int upper_n = 0;
  bool lower_is_trivial = false;  // no bridge counts: floor of 1
};

// min_n c_n^{1/n} and its argmin; max_n b_n^{1/n} and its argmax.
std::pair<double, int> mu_upper(const CountsTable& t);
std::pair<double, int> mu_lower(const CountsTable& t);

MuBracket bracket_from_counts(const CountsTable& t);
MuBracket bracket(const GroupSpec& spec, int n_max, const EnumerationOptions& opts = {});

// Coordinate models of reference lattices, sharing the enumeration core.
enum class LatticeKind { Square, Honeycomb };

class LatticeAdapter final : public WalkGraph {
 public:
  explicit LatticeAdapter(LatticeKind kind, int root_x = 0, int root_y = 0)
      : kind_(kind), root_x_(root_x), root_y_(root_y) {}

  LatticeKind kind() const { return kind_; }
  std::string name() const;

  int direction_count() const override;
  bool has_heights() const override { return false; }
  int step_weight(int) const override { return 0; }
  std::string root_key() const override;
  std::optional<std::string> step(const std::string& key, int dir) const override;

 private:
  LatticeKind kind_;
  int root_x_, root_y_;
};

// Exact c_n from the lattice root; transitivity is spot-checked from two
// further roots at depth min(n_max, 10).
CountsTable lattice_counts(const LatticeAdapter& adapter, int n_max,
                           const EnumerationOptions& opts = {});
MuBracket lattice_bracket(const LatticeAdapter& adapter, int n_max,
                          const EnumerationOptions& opts = {});

// "g^m"-style relator template for quotient families.
struct RelatorTemplate {
  int generator = 0;
  std::string text;

  Word instantiate(long m) const {
    return Word(static_cast<std::size_t>(m), GeneratorSymbol{generator, +1});
  }
};

RelatorTemplate parse_relator_template(std::string_view text, const GroupSpec& base);

struct LocalityRow {
  long m = 0;
  std::optional<int> rel_girth;  // nullopt = above the girth cutoff
  int girth_cutoff = 0;
  int eq_horizon = 0;  // largest n <= n_max with c_n(quotient) = c_n(base)
  MuBracket quotient_bracket;
  MuBracket base_bracket;
};

// One row per parameter of the quotient family base / <relator(m)>.
std::vector<LocalityRow> locality_experiment(const GroupSpec& base,
                                             const RelatorTemplate& relator,
                                             const std::vector<long>& params, int n_max,
                                             int girth_cutoff,
                                             const EnumerationOptions& opts = {});

}  // namespace sawlab
