#include "sawlab/saw.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "sawlab/errors.hpp"

namespace sawlab {

int edge_weight(GeneratorSymbol s, int distinguished) {
  if (s.index != distinguished) return 0;
  return s.sign > 0 ? +1 : -1;
}

WalkKind classify_heights(std::span<const int> heights) {
  const int n = static_cast<int>(heights.size()) - 1;
  const int hn = heights[static_cast<std::size_t>(n)];
  bool half_space = true;
  bool bridge = true;
  for (int s = 1; s <= n; ++s) {
    int hs = heights[static_cast<std::size_t>(s)];
    if (hs <= 0) half_space = false;
    if (hs <= 0 || hs > hn) bridge = false;
  }
  if (bridge) return WalkKind::Bridge;
  if (half_space) return WalkKind::HalfSpace;
  return WalkKind::Other;
}

WalkKind classify_walk(const WalkRecord& rec) { return classify_heights(rec.heights); }

Decomposition decompose_heights(std::span<const int> heights, bool strict) {
  if (strict && classify_heights(heights) == WalkKind::Other) {
    throw InvalidRequestError("decompose: not a half-space walk");
  }
  const int n = static_cast<int>(heights.size()) - 1;
  Decomposition d;
  int prev = 0;
  for (int j = 1; prev != n; ++j) {
    const int sign = (j % 2 == 1) ? -1 : +1;  // (-1)^j
    int best = std::numeric_limits<int>::min();
    int arg = prev;
    for (int s = prev; s <= n; ++s) {
      int value = sign * (heights[static_cast<std::size_t>(prev)] -
                          heights[static_cast<std::size_t>(s)]);
      if (value >= best) {
        if (value > best) best = value;
        arg = s;  // last position attaining the maximum
      }
    }
    if (best > 0) {
      d.span_parts.push_back(best);
      d.break_points.push_back(arg);
    }
    prev = arg;
  }
  return d;
}

void decompose_half_space(WalkRecord& rec) {
  Decomposition d = decompose_heights(rec.heights, /*strict=*/true);
  rec.span_parts = std::move(d.span_parts);
  rec.break_points = std::move(d.break_points);
}

namespace {

// Returns the first colliding step index, or -1 when the word is an SAW.
int build_record(const Normalizer& nf, std::optional<int> distinguished,
                 const Word& word, WalkRecord* out) {
  out->word = word;
  out->vertices.clear();
  out->heights.clear();
  out->span_parts.clear();
  out->break_points.clear();
  out->vertices.push_back(nf.identity());
  out->heights.push_back(0);
  for (std::size_t i = 0; i < word.size(); ++i) {
    Element next = nf.apply(out->vertices.back(), word[i]);
    for (const Element& seen : out->vertices) {
      if (seen == next) return static_cast<int>(i) + 1;
    }
    out->vertices.push_back(std::move(next));
    int w = distinguished ? edge_weight(word[i], *distinguished) : 0;
    out->heights.push_back(out->heights.back() + w);
  }
  auto [lo, hi] = std::minmax_element(out->heights.begin(), out->heights.end());
  out->span = *hi - *lo;
  out->kind = classify_heights(out->heights);
  if (out->kind != WalkKind::Other) {
    Decomposition d = decompose_heights(out->heights);
    out->span_parts = std::move(d.span_parts);
    out->break_points = std::move(d.break_points);
  }
  return -1;
}

}  // namespace

WalkRecord make_walk_record(const Normalizer& nf, std::optional<int> distinguished,
                            const Word& word) {
  WalkRecord rec;
  int collision = build_record(nf, distinguished, word, &rec);
  if (collision >= 0) {
    throw InvalidRequestError("word is not self-avoiding (step " +
                              std::to_string(collision) + ")");
  }
  return rec;
}

ReflectResult reflect(const Normalizer& nf, int distinguished, const WalkRecord& rec) {
  ReflectResult result;
  std::vector<int> parts = rec.span_parts;
  std::vector<int> breaks = rec.break_points;
  if (parts.empty()) {
    Decomposition d = decompose_heights(rec.heights, /*strict=*/true);
    parts = std::move(d.span_parts);
    breaks = std::move(d.break_points);
  }
  if (parts.size() <= 1) {
    result.walk = rec;
    return result;
  }
  const int n1 = breaks.front();
  Word image = rec.word;
  for (std::size_t i = static_cast<std::size_t>(n1); i < image.size(); ++i) {
    image[i] = image[i].inverse();
  }
  int collision = build_record(nf, distinguished, image, &result.walk);
  if (collision >= 0) {
    result.self_intersected = true;
    result.collision_index = collision;
  }
  return result;
}

mpz_class partitions_distinct(int a) {
  if (a < 0) throw InvalidRequestError("partitions_distinct: negative argument");
  std::vector<mpz_class> dp(static_cast<std::size_t>(a) + 1);
  dp[0] = 1;
  for (int k = 1; k <= a; ++k) {
    for (int s = a; s >= k; --s) {
      dp[static_cast<std::size_t>(s)] += dp[static_cast<std::size_t>(s - k)];
    }
  }
  return dp[static_cast<std::size_t>(a)];
}

// --- enumeration core -------------------------------------------------------

CayleyWalkGraph::CayleyWalkGraph(NormalizerPtr nf, std::optional<int> distinguished)
    : nf_(std::move(nf)), distinguished_(distinguished) {}

int CayleyWalkGraph::direction_count() const { return 2 * nf_->generator_count(); }

int CayleyWalkGraph::step_weight(int dir) const {
  if (!distinguished_) return 0;
  return edge_weight(GeneratorSymbol::from_rank(dir), *distinguished_);
}

std::string CayleyWalkGraph::root_key() const { return nf_->identity().key(); }

std::optional<std::string> CayleyWalkGraph::step(const std::string& key, int dir) const {
  return nf_->apply(Element(key), GeneratorSymbol::from_rank(dir)).key();
}

namespace {

struct Accumulator {
  std::vector<mpz_class> c;
  std::vector<std::vector<mpz_class>> b, h;

  void init(int n_max, bool bridges) {
    c.assign(static_cast<std::size_t>(n_max) + 1, 0);
    if (bridges) {
      b.resize(static_cast<std::size_t>(n_max) + 1);
      h.resize(static_cast<std::size_t>(n_max) + 1);
      for (int n = 0; n <= n_max; ++n) {
        b[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
        h[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
      }
    }
  }

  void add(const Accumulator& other) {
    for (std::size_t n = 0; n < c.size(); ++n) c[n] += other.c[n];
    for (std::size_t n = 0; n < b.size(); ++n) {
      for (std::size_t a = 0; a < b[n].size(); ++a) {
        b[n][a] += other.b[n][a];
        h[n][a] += other.h[n][a];
      }
    }
  }
};

class DfsCounter {
 public:
  DfsCounter(const WalkGraph& g, int n_max, bool bridges)
      : g_(g), n_max_(n_max), bridges_(bridges), dirs_(g.direction_count()) {
    for (int d = 0; d < dirs_; ++d) weights_.push_back(g.step_weight(d));
    visited_.reserve(static_cast<std::size_t>(n_max) + 1);
  }

  // Full count from the root; nodes at depth <= prefix_depth may instead be
  // deferred into `tasks` (direction prefixes) for parallel continuation.
  void run(Accumulator& acc, int prefix_depth, std::vector<std::vector<int>>* tasks) {
    visited_.push_back(g_.root_key());
    prefix_.clear();
    descend(acc, 0, 0, 1, 0, prefix_depth, tasks);
    visited_.pop_back();
  }

  // Continue one deferred prefix: replays it, then counts strictly deeper
  // nodes.
  void run_task(Accumulator& acc, const std::vector<int>& prefix) {
    visited_.push_back(g_.root_key());
    int height = 0;
    int min_tail = 1;  // min over s >= 1; start above 0 so "all positive" holds
    int max_h = 0;
    bool ok = true;
    for (int dir : prefix) {
      auto next = g_.step(visited_.back(), dir);
      if (!next) {
        ok = false;
        break;
      }
      height += weights_[static_cast<std::size_t>(dir)];
      min_tail = std::min(min_tail, height);
      max_h = std::max(max_h, height);
      visited_.push_back(std::move(*next));
    }
    if (ok) {
      descend(acc, static_cast<int>(prefix.size()), height, min_tail, max_h, -1, nullptr);
    }
    visited_.clear();
  }

 private:
  void descend(Accumulator& acc, int depth, int height, int min_tail, int max_h,
               int prefix_depth, std::vector<std::vector<int>>* tasks) {
    if (depth == n_max_) return;
    if (depth == prefix_depth && tasks) {
      tasks->push_back(prefix_);
      return;
    }
    for (int dir = 0; dir < dirs_; ++dir) {
      auto next = g_.step(visited_.back(), dir);
      if (!next) continue;
      bool seen = false;
      for (const std::string& v : visited_) {
        if (v == *next) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      const int nh = height + weights_[static_cast<std::size_t>(dir)];
      const int nmin = std::min(min_tail, nh);
      const int nmax = std::max(max_h, nh);
      const int nd = depth + 1;
      acc.c[static_cast<std::size_t>(nd)] += 1;
      if (bridges_ && nmin > 0) {
        acc.h[static_cast<std::size_t>(nd)][static_cast<std::size_t>(nmax)] += 1;
        if (nmax == nh) {
          acc.b[static_cast<std::size_t>(nd)][static_cast<std::size_t>(nmax)] += 1;
        }
      }
      visited_.push_back(std::move(*next));
      if (tasks) prefix_.push_back(dir);
      descend(acc, nd, nh, nmin, nmax, prefix_depth, tasks);
      if (tasks) prefix_.pop_back();
      visited_.pop_back();
    }
  }

  const WalkGraph& g_;
  int n_max_;
  bool bridges_;
  int dirs_;
  std::vector<int> weights_;
  std::vector<std::string> visited_;
  std::vector<int> prefix_;
};

}  // namespace

CountsTable enumerate_counts(const WalkGraph& g, int n_max, bool with_bridges,
                             const EnumerationOptions& opts) {
  if (n_max < 0) throw InvalidRequestError("n_max must be >= 0");
  if (with_bridges && !g.has_heights()) {
    throw InvalidRequestError("bridge counting requires a distinguished generator");
  }
  const int threads = std::max(1, opts.threads);
  const int split = std::clamp(opts.split_depth, 1, std::max(1, n_max));

  Accumulator total;
  total.init(n_max, with_bridges);

  if (threads == 1 || n_max <= split) {
    DfsCounter counter(g, n_max, with_bridges);
    counter.run(total, -1, nullptr);
  } else {
    std::vector<std::vector<int>> tasks;
    {
      DfsCounter counter(g, n_max, with_bridges);
      counter.run(total, split, &tasks);
    }
    std::vector<Accumulator> partial(tasks.size());
    for (auto& acc : partial) acc.init(n_max, with_bridges);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      DfsCounter counter(g, n_max, with_bridges);
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
        counter.run_task(partial[i], tasks[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    for (const Accumulator& acc : partial) total.add(acc);
  }

  CountsTable table;
  table.n_max = n_max;
  table.has_bridge_data = with_bridges;
  table.c = std::move(total.c);
  table.c[0] = 1;
  if (with_bridges) {
    table.b_by_span = std::move(total.b);
    table.h_by_span = std::move(total.h);
    table.b_by_span[0][0] = 1;  // a single point is a 0-step bridge
    table.h_by_span[0][0] = 1;  // ... and a 0-step half-space walk
    table.b.assign(static_cast<std::size_t>(n_max) + 1, 0);
    table.h.assign(static_cast<std::size_t>(n_max) + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
      for (const mpz_class& x : table.b_by_span[static_cast<std::size_t>(n)]) {
        table.b[static_cast<std::size_t>(n)] += x;
      }
      for (const mpz_class& x : table.h_by_span[static_cast<std::size_t>(n)]) {
        table.h[static_cast<std::size_t>(n)] += x;
      }
    }
  }
  return table;
}

CountsTable count_saws(const GroupSpec& spec, int n_max, const EnumerationOptions& opts) {
  CayleyWalkGraph g(normalizer_for(spec), spec.distinguished);
  CountsTable t = enumerate_counts(g, n_max, /*with_bridges=*/false, opts);
  t.group = render_group_spec(spec);
  return t;
}

CountsTable count_bridges(const GroupSpec& spec, int n_max, const EnumerationOptions& opts) {
  if (!spec.distinguished.has_value()) {
    throw InvalidRequestError("no distinguished generator");
  }
  CayleyWalkGraph g(normalizer_for(spec), spec.distinguished);
  CountsTable t = enumerate_counts(g, n_max, /*with_bridges=*/true, opts);
  t.group = render_group_spec(spec);
  return t;
}

void for_each_saw(const GroupSpec& spec, int max_len,
                  const std::function<void(const WalkRecord&)>& fn) {
  NormalizerPtr nf = normalizer_for(spec);
  const int p = spec.generator_count();
  const std::optional<int> dist = spec.distinguished;

  WalkRecord rec;
  rec.vertices.push_back(nf->identity());
  rec.heights.push_back(0);

  auto emit = [&] {
    WalkRecord out = rec;
    auto [lo, hi] = std::minmax_element(out.heights.begin(), out.heights.end());
    out.span = *hi - *lo;
    out.kind = classify_heights(out.heights);
    if (out.kind != WalkKind::Other) {
      Decomposition d = decompose_heights(out.heights);
      out.span_parts = std::move(d.span_parts);
      out.break_points = std::move(d.break_points);
    }
    fn(out);
  };

  std::function<void()> descend = [&] {
    if (rec.length() == max_len) return;
    for (int r = 0; r < 2 * p; ++r) {
      GeneratorSymbol s = GeneratorSymbol::from_rank(r);
      Element next = nf->apply(rec.vertices.back(), s);
      bool seen = false;
      for (const Element& v : rec.vertices) {
        if (v == next) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      rec.word.push_back(s);
      rec.vertices.push_back(std::move(next));
      int w = dist ? edge_weight(s, *dist) : 0;
      rec.heights.push_back(rec.heights.back() + w);
      emit();
      descend();
      rec.word.pop_back();
      rec.vertices.pop_back();
      rec.heights.pop_back();
    }
  };
  descend();
}

std::vector<WalkRecord> half_space_walks(const GroupSpec& spec, int length) {
  std::vector<WalkRecord> walks;
  for_each_saw(spec, length, [&](const WalkRecord& rec) {
    if (rec.length() == length && rec.kind != WalkKind::Other) walks.push_back(rec);
  });
  return walks;
}

// --- verifiers --------------------------------------------------------------

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckLine& c) { return c.pass; });
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void require_bridge_data(const CountsTable& t, const char* who) {
  if (!t.has_bridge_data) {
    throw InvalidRequestError(std::string(who) + ": table has no bridge data");
  }
}

}  // namespace

double log_mpz(const mpz_class& z) {
  if (z <= 0) throw InvalidRequestError("log of non-positive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double nth_root(const mpz_class& z, int n) { return std::exp(log_mpz(z) / n); }

VerifyReport verify_step2_inequality(const CountsTable& t) {
  require_bridge_data(t, "verify_step2_inequality");
  VerifyReport report;
  report.title = "step2";
  for (int n = 1; n <= t.n_max; ++n) {
    mpz_class mid = 0;
    for (int a = 1; a <= n; ++a) {
      mid += partitions_distinct(a) *
             t.b_by_span[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
    }
    mpz_class rhs = partitions_distinct(n) * t.b[static_cast<std::size_t>(n)];
    const mpz_class& lhs = t.h[static_cast<std::size_t>(n)];
    report.checks.push_back(
        {"step2_left", n, lhs.get_str(), mid.get_str(), lhs <= mid});
    report.checks.push_back(
        {"step2_right", n, mid.get_str(), rhs.get_str(), mid <= rhs});
  }
  return report;
}

VerifyReport verify_hw_inequality(const CountsTable& t, double hw_constant) {
  require_bridge_data(t, "verify_hw_inequality");
  if (!(hw_constant > kHwConstantFloor)) {
    throw InvalidRequestError("B must exceed pi*sqrt(2/3) ~ 2.5651");
  }
  VerifyReport report;
  report.title = "hammersley_welsh";
  int holds_from = 1;
  for (int n = 1; n + 1 <= t.n_max; ++n) {
    const mpz_class& cn = t.c[static_cast<std::size_t>(n)];
    const mpz_class& bn1 = t.b[static_cast<std::size_t>(n) + 1];
    double beta = std::numeric_limits<double>::infinity();
    if (bn1 > 0 && cn > 0) {
      beta = (log_mpz(cn) - log_mpz(bn1)) / std::sqrt(static_cast<double>(n));
    }
    bool pass = beta <= hw_constant + 1e-12;
    if (!pass) holds_from = n + 1;
    report.checks.push_back({"hw_beta", n, fmt_double(beta), fmt_double(hw_constant), pass});
  }
  report.summary["holds_from_n"] = std::to_string(holds_from);
  return report;
}

VerifyReport verify_supermultiplicativity(const CountsTable& t) {
  VerifyReport report;
  report.title = "multiplicativity";
  for (int m = 1; m <= t.n_max; ++m) {
    for (int n = m; m + n <= t.n_max; ++n) {
      mpz_class cc = t.c[static_cast<std::size_t>(m)] * t.c[static_cast<std::size_t>(n)];
      const mpz_class& csum = t.c[static_cast<std::size_t>(m + n)];
      report.checks.push_back({"c_submult(" + std::to_string(m) + "," + std::to_string(n) + ")",
                               m + n, csum.get_str(), cc.get_str(), csum <= cc});
      if (t.has_bridge_data) {
        mpz_class bb = t.b[static_cast<std::size_t>(m)] * t.b[static_cast<std::size_t>(n)];
        const mpz_class& bsum = t.b[static_cast<std::size_t>(m + n)];
        report.checks.push_back(
            {"b_supermult(" + std::to_string(m) + "," + std::to_string(n) + ")", m + n,
             bsum.get_str(), bb.get_str(), bsum >= bb});
      }
    }
  }
  return report;
}

VerifyReport verify_reflection(const GroupSpec& spec, int max_len) {
  if (!spec.distinguished.has_value()) {
    throw InvalidRequestError("no distinguished generator");
  }
  NormalizerPtr nf = normalizer_for(spec);
  const int dist = *spec.distinguished;

  std::vector<std::vector<WalkRecord>> by_len(static_cast<std::size_t>(max_len) + 1);
  for_each_saw(spec, max_len, [&](const WalkRecord& rec) {
    if (rec.kind != WalkKind::Other) {
      by_len[static_cast<std::size_t>(rec.length())].push_back(rec);
    }
  });

  VerifyReport report;
  report.title = "reflection";
  long long total = 0;
  for (int n = 1; n <= max_len; ++n) {
    long long bad_decomposition = 0, bad_saw = 0, bad_class = 0, bad_injective = 0;
    std::map<std::vector<int>, std::set<std::string>> images;
    for (const WalkRecord& w : by_len[static_cast<std::size_t>(n)]) {
      ++total;
      bool ok = !w.span_parts.empty() && w.break_points.back() == n;
      for (std::size_t i = 0; ok && i < w.span_parts.size(); ++i) {
        if (w.span_parts[i] <= 0) ok = false;
        if (i > 0 && w.span_parts[i] >= w.span_parts[i - 1]) ok = false;
      }
      if (!ok) {
        ++bad_decomposition;
        continue;
      }
      ReflectResult r = reflect(*nf, dist, w);
      if (r.self_intersected) {
        ++bad_saw;
        continue;
      }
      std::vector<int> expected = w.span_parts;
      if (expected.size() >= 2) {
        expected[0] += expected[1];
        expected.erase(expected.begin() + 1);
      }
      if (r.walk.kind == WalkKind::Other || r.walk.span_parts != expected) ++bad_class;
      std::string image_key;
      for (const GeneratorSymbol& s : r.walk.word) {
        image_key.push_back(static_cast<char>('0' + s.rank()));
      }
      if (!images[w.span_parts].insert(image_key).second) ++bad_injective;
    }
    auto line = [n](const char* name, long long bad) {
      return CheckLine{name, n, std::to_string(bad), "0", bad == 0};
    };
    report.checks.push_back(line("reflection_decomposition", bad_decomposition));
    report.checks.push_back(line("reflection_is_saw", bad_saw));
    report.checks.push_back(line("reflection_class_map", bad_class));
    report.checks.push_back(line("reflection_injective", bad_injective));
  }
  report.summary["half_space_walks_checked"] = std::to_string(total);
  return report;
}

VerifyReport verify_quotient_counts(const CountsTable& base, const CountsTable& quot,
                                    const GirthReport& girth) {
  VerifyReport report;
  report.title = "quotient_counts";
  const int n_max = std::min(base.n_max, quot.n_max);
  const int g = girth.value.value_or(std::numeric_limits<int>::max());
  const long long horizon = std::min<long long>(n_max, static_cast<long long>(g) - 1);
  for (int n = 1; n <= horizon; ++n) {
    report.checks.push_back({"quotient_c_equal", n,
                             quot.c[static_cast<std::size_t>(n)].get_str(),
                             base.c[static_cast<std::size_t>(n)].get_str(),
                             quot.c[static_cast<std::size_t>(n)] ==
                                 base.c[static_cast<std::size_t>(n)]});
    if (base.has_bridge_data && quot.has_bridge_data) {
      report.checks.push_back({"quotient_b_equal", n,
                               quot.b[static_cast<std::size_t>(n)].get_str(),
                               base.b[static_cast<std::size_t>(n)].get_str(),
                               quot.b[static_cast<std::size_t>(n)] ==
                                   base.b[static_cast<std::size_t>(n)]});
    }
  }
  if (girth.value && g <= n_max) {
    report.checks.push_back({"quotient_c_strict", g,
                             quot.c[static_cast<std::size_t>(g)].get_str(),
                             base.c[static_cast<std::size_t>(g)].get_str(),
                             quot.c[static_cast<std::size_t>(g)] <
                                 base.c[static_cast<std::size_t>(g)]});
  }
  report.summary["relative_girth"] =
      girth.value ? std::to_string(*girth.value) : "above_cutoff";
  return report;
}

}  // namespace sawlab
