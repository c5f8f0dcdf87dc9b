#pragma once

#include <ostream>
#include <string>

namespace sawlab {

// Exit codes shared by every subcommand:
//   0 success, 1 failed verification verdict, 2 spec/usage error,
//   3 unsupported presentation or quotient, 4 quotient relation violated.
struct RunConfig {
  std::string group;
  std::string base;
  std::string quotient_spec;
  std::string relator;   // template, e.g. "b^m"
  std::string m_range;   // "3..8" or a single value
  std::string lattice;   // "", "square", "honeycomb"
  std::string versus;    // second spec for fingerprint distance
  int n_max = 8;
  int cutoff = 12;
  double hw_constant = 3.0;
  int threads = 0;  // 0 = available parallelism
  std::string format = "csv";
  std::string cache_path;  // empty: SAWLAB_CACHE env var, then default file
  bool use_cache = true;
  bool bridges = false;
  bool force_class_g = false;
};

int run_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_locality(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_girth(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_fingerprint(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sawlab
