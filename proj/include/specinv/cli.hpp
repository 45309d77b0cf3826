#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specinv/coeff.hpp"
#include "specinv/group.hpp"

namespace specinv {

/// One summand of an element literal: a group point with either a scalar
/// amplitude or an explicit sparse coefficient function.
struct ElementTerm {
  Elem g;
  Complex c{1.0};
  std::map<std::int64_t, Complex> f;
  bool is_function = false;
};

/// Everything a run needs, parsed from the sectioned key = value config.
struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string check = "strong";

  GroupDescriptor group;  // kind empty: no group section given
  AlgebraDescriptor algebra{.kind = "scalar"};
  std::string action_rule = "trivial";
  std::vector<std::vector<std::size_t>> permutation;

  std::vector<ElementTerm> element;
  Complex lambda{1.0, 0.0};
  std::vector<double> radii;  // katznelson demo arguments

  std::uint32_t n_max = 32;
  std::uint32_t radius = 8;
  std::size_t grid = 1 << 14;
  std::size_t term_budget = 50'000'000;
  std::size_t max_terms = 400;
  std::size_t samples = 100;

  int d = 0;
  std::size_t m = 0;
  int q = 2;
  int k = 1;
  int d_max = 6;
  std::size_t m_max = 3;

  double tol = 1e-10;
};

/// Parses the sectioned text; unknown sections or keys are config errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct RunFlags {
  std::string out_override;
  std::optional<std::uint64_t> seed_override;
  bool json_stdout = false;
  bool csv = false;
  bool quiet = false;
};

/// Runs one subcommand, writes <name>.json (timestamp in <name>.meta.json,
/// so reruns are byte-identical) and optional CSV into the output directory,
/// prints one summary line per part. Returns 0 when every verdict passes and
/// 1 otherwise; errors propagate as exceptions for the caller to map to 2.
int run_experiment(const std::string& subcommand, const ExperimentConfig& config,
                   const RunFlags& flags);

}  // namespace specinv
