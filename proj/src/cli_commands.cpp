#include "sawlab/cli.hpp"

#include <cstdlib>
#include <functional>
#include <thread>

#include "sawlab/cache.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/estimate.hpp"
#include "sawlab/serialize.hpp"

namespace sawlab {

namespace {

int dispatch(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const SpecParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidRequestError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedPresentationError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedQuotientError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const QuotientRelationViolatedError& e) {
    err << "error: " << e.what() << " (witness: " << e.witness() << ")\n";
    return 4;
  }
}

EnumerationOptions enum_options(const RunConfig& config) {
  EnumerationOptions opts;
  if (config.threads > 0) {
    opts.threads = config.threads;
  } else {
    unsigned hw = std::thread::hardware_concurrency();
    opts.threads = hw ? static_cast<int>(hw) : 1;
  }
  return opts;
}

std::string resolve_cache_path(const RunConfig& config) {
  if (!config.use_cache) return {};
  if (!config.cache_path.empty()) return config.cache_path;
  if (const char* env = std::getenv("SAWLAB_CACHE")) {
    if (*env) return env;
  }
  return "sawlab_cache.jsonl";
}

// The class-membership gate used before any bridge enumeration. Returns
// false (after printing) when the spec fails and force is off.
bool class_g_gate(const GroupSpec& spec, const RunConfig& config, std::ostream& err) {
  int cutoff = std::min(config.cutoff, config.n_max);
  if (cutoff < 1) cutoff = 1;
  if (cutoff < config.n_max) {
    err << "warning: class-G certificate cutoff " << cutoff
        << " is smaller than the walk length " << config.n_max << "\n";
  }
  ClassGReport report = validate_class_g(spec, cutoff);
  if (report.pass) return true;
  err << "class-G validation failed:\n" << classg_to_json(report).dump(2) << "\n";
  if (config.force_class_g) {
    err << "warning: continuing anyway (--force-class-g)\n";
    return true;
  }
  return false;
}

std::vector<long> parse_m_range(const std::string& text) {
  if (text.empty()) throw InvalidRequestError("missing --m range");
  std::size_t dots = text.find("..");
  long from = 0, to = 0;
  try {
    if (dots == std::string::npos) {
      from = to = std::stol(text);
    } else {
      from = std::stol(text.substr(0, dots));
      to = std::stol(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw InvalidRequestError("cannot parse --m range '" + text + "'");
  }
  if (from > to) throw InvalidRequestError("empty --m range");
  std::vector<long> params;
  for (long m = from; m <= to; ++m) params.push_back(m);
  return params;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_count(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    GroupSpec spec = parse_group_spec(config.group);
    const std::string group_id = render_group_spec(spec);

    std::string cache_path = resolve_cache_path(config);
    std::optional<CountsTable> table;
    std::optional<CountsCache> cache;
    if (!cache_path.empty()) {
      cache.emplace(cache_path);
      table = cache->lookup(group_id, spec.distinguished, config.n_max, config.bridges);
    }
    if (!table) {
      if (config.bridges) {
        if (!spec.distinguished.has_value()) {
          throw InvalidRequestError("no distinguished generator (mark one with '!')");
        }
        if (!class_g_gate(spec, config, err)) return 2;
        table = count_bridges(spec, config.n_max, enum_options(config));
      } else {
        table = count_saws(spec, config.n_max, enum_options(config));
      }
      if (cache) cache->append(*table, spec.distinguished);
    }

    if (config.format == "json") {
      emit(out, counts_to_json(*table));
    } else {
      out << counts_to_csv(*table);
    }
    return 0;
  });
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    GroupSpec spec = parse_group_spec(config.group);
    if (!spec.distinguished.has_value()) {
      throw InvalidRequestError("no distinguished generator (mark one with '!')");
    }
    int vcut = std::min(config.cutoff, config.n_max);
    if (vcut < 1) vcut = 1;
    ClassGReport class_g = validate_class_g(spec, vcut);
    if (!class_g.pass && !config.force_class_g) {
      err << "class-G validation failed:\n" << classg_to_json(class_g).dump(2) << "\n";
      return 2;
    }

    CountsTable table = count_bridges(spec, config.n_max, enum_options(config));
    std::vector<VerifyReport> sections;
    sections.push_back(verify_step2_inequality(table));
    sections.push_back(verify_hw_inequality(table, config.hw_constant));
    sections.push_back(verify_supermultiplicativity(table));
    sections.push_back(verify_reflection(spec, std::min(config.n_max, 7)));

    bool all_pass = class_g.pass;
    Json j;
    j["group"] = render_group_spec(spec);
    j["n_max"] = config.n_max;
    j["B"] = format_double(config.hw_constant);
    j["class_g"] = classg_to_json(class_g);
    Json sec = Json::array();
    for (const VerifyReport& r : sections) {
      all_pass = all_pass && r.all_pass();
      sec.push_back(report_to_json(r));
    }
    j["sections"] = std::move(sec);
    j["all_pass"] = all_pass;
    emit(out, j);
    return all_pass ? 0 : 1;
  });
}

int run_locality(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    GroupSpec base = parse_group_spec(config.base);
    RelatorTemplate tmpl = parse_relator_template(config.relator, base);
    std::vector<long> params = parse_m_range(config.m_range);

    if (!class_g_gate(base, config, err)) return 2;
    for (long m : params) {
      GroupSpec member = quotient(base, {tmpl.instantiate(m)});
      if (!class_g_gate(member, config, err)) return 2;
    }

    std::vector<LocalityRow> rows = locality_experiment(
        base, tmpl, params, config.n_max, config.cutoff, enum_options(config));
    if (config.format == "json") {
      Json j = locality_to_json(rows);
      j["base"] = render_group_spec(base);
      j["relator"] = tmpl.text;
      emit(out, j);
    } else {
      out << locality_to_csv(rows);
    }
    return 0;
  });
}

int run_girth(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    GroupSpec base = parse_group_spec(config.base);
    GroupSpec quot = parse_group_spec(config.quotient_spec);
    GirthReport report = relative_girth(base, quot, config.cutoff);
    emit(out, girth_to_json(report, flatten(base).generator_names));
    return 0;
  });
}

int run_fingerprint(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    GroupSpec spec = parse_group_spec(config.group);
    Fingerprint f = fingerprint(spec, config.cutoff);
    if (config.versus.empty()) {
      emit(out, fingerprint_to_json(f, flatten(spec).generator_names));
      return 0;
    }
    Fingerprint g = fingerprint(parse_group_spec(config.versus), config.cutoff);
    FingerprintDistance d = fingerprint_distance(f, g);
    Json j;
    j["d"] = f.generator_count;
    j["L"] = f.cutoff;
    j["agreement_cutoff"] = d.agreement_cutoff;
    j["distance"] = format_double(d.value);
    emit(out, j);
    return 0;
  });
}

int run_estimate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(err, [&]() -> int {
    MuBracket br;
    if (!config.lattice.empty()) {
      LatticeKind kind;
      if (config.lattice == "square") {
        kind = LatticeKind::Square;
      } else if (config.lattice == "honeycomb") {
        kind = LatticeKind::Honeycomb;
      } else {
        throw InvalidRequestError("unknown lattice '" + config.lattice + "'");
      }
      br = lattice_bracket(LatticeAdapter(kind), config.n_max, enum_options(config));
    } else {
      GroupSpec spec = parse_group_spec(config.group);
      if (spec.distinguished.has_value() && !class_g_gate(spec, config, err)) return 2;
      br = bracket(spec, config.n_max, enum_options(config));
    }
    emit(out, bracket_to_json(br));
    return 0;
  });
}

}  // namespace sawlab
