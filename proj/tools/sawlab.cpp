#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sawlab/cli.hpp"
#include "sawlab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"self-avoiding walks, bridges and connective-constant brackets "
               "on Cayley graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sawlab::kEngineVersion);

  sawlab::RunConfig config;
  std::string out_path;

  auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--max-len", config.n_max, "maximum walk length N");
    cmd->add_option("--cutoff", config.cutoff, "word-length cutoff L");
    cmd->add_option("--threads", config.threads,
                    "worker threads (0 = available parallelism)");
    cmd->add_option("--format", config.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "write the payload to a file instead of stdout");
    cmd->add_flag("--force-class-g", config.force_class_g,
                  "proceed despite a failed class-G certificate");
  };

  CLI::App* count = app.add_subcommand("count", "enumerate SAW counts c_n (and bridges)");
  count->add_option("--group", config.group, "group spec")->required();
  count->add_flag("--bridges", config.bridges, "also classify bridges/half-space walks");
  count->add_option("--cache", config.cache_path, "cache file (JSONL, append-only)");
  count->add_flag("!--no-cache", config.use_cache, "disable the result cache");
  add_shared(count);

  CLI::App* verify =
      app.add_subcommand("verify", "run the inequality and reflection suites");
  verify->add_option("--group", config.group, "group spec")->required();
  verify->add_option("--B", config.hw_constant, "constant B > pi*sqrt(2/3)");
  add_shared(verify);

  CLI::App* locality =
      app.add_subcommand("locality", "quotient-family locality experiment");
  locality->add_option("--base", config.base, "base group spec")->required();
  locality->add_option("--relator", config.relator, "relator template, e.g. b^m")
      ->required();
  locality->add_option("--m", config.m_range, "parameter range, e.g. 3..8")->required();
  add_shared(locality);

  CLI::App* girth = app.add_subcommand("girth", "relative girth of a quotient");
  girth->add_option("--base", config.base, "base group spec")->required();
  girth->add_option("--quotient", config.quotient_spec, "quotient group spec")->required();
  add_shared(girth);

  CLI::App* fingerprint =
      app.add_subcommand("fingerprint", "identity words up to a cutoff");
  fingerprint->add_option("--group", config.group, "group spec")->required();
  fingerprint->add_option("--versus", config.versus,
                          "second spec: report the fingerprint distance");
  add_shared(fingerprint);

  CLI::App* estimate =
      app.add_subcommand("estimate", "connective-constant bracket");
  estimate->add_option("--group", config.group, "group spec");
  estimate->add_option("--lattice", config.lattice, "coordinate lattice")
      ->check(CLI::IsMember({"square", "honeycomb"}));
  add_shared(estimate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (estimate->parsed() && config.group.empty() == config.lattice.empty()) {
    std::cerr << "error: estimate needs exactly one of --group or --lattice\n";
    return 2;
  }

  std::ostringstream payload;
  int code = 0;
  if (count->parsed()) {
    code = sawlab::run_count(config, payload, std::cerr);
  } else if (verify->parsed()) {
    code = sawlab::run_verify(config, payload, std::cerr);
  } else if (locality->parsed()) {
    code = sawlab::run_locality(config, payload, std::cerr);
  } else if (girth->parsed()) {
    code = sawlab::run_girth(config, payload, std::cerr);
  } else if (fingerprint->parsed()) {
    code = sawlab::run_fingerprint(config, payload, std::cerr);
  } else if (estimate->parsed()) {
    code = sawlab::run_estimate(config, payload, std::cerr);
  }

  if (out_path.empty()) {
    std::cout << payload.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return 2;
    }
    file << payload.str();
  }
  return code;
}
