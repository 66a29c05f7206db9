#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupwalk/distribution.hpp"
#include "groupwalk/matrix_walk.hpp"

namespace groupwalk {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class Backend { Float, Rational };

struct Options {
  int n_max = 64;
  int matrix_horizon = 200;
  double spectral_tol = 1e-9;
  double unitarity_tol = 1e-9;
  double orbit_tol = 1e-8;
  double atom_threshold = 0.0;
  double settle_tol = 1e-6;
  double norm_threshold = 0.05;
  int closure_cap = 10000;
  int lattice_cap = 48;
  int eig_cap = 512;
  int orbit_cap = 360;
  int tensor_degree = 2;
  long long samples = 10000;
  int walk_length = 16;
  unsigned long long seed = 1;
  Backend backend = Backend::Float;
  std::optional<std::string> trace_path;
};

/// One distribution atom as written in the config: element by index or
/// label, probability as an exact rational.
struct ProbPair {
  std::string element;  // decimal index or display label
  Rational prob;
};

/// Declarative description of one analysis: exactly one group source
/// (preset, Cayley file, permutation generators, or a matrix measure), the
/// step distribution, and options.
struct AnalysisConfig {
  std::optional<std::string> preset;
  std::optional<std::string> cayley_file;
  std::optional<std::vector<std::string>> permutations;
  std::optional<int> permutation_degree;

  // matrix source; atoms carry their own probabilities
  std::optional<nlohmann::json> matrix_measure;  // kept raw for echo

  std::vector<ProbPair> pairs;
  Options options;

  bool is_matrix() const { return matrix_measure.has_value(); }

  static AnalysisConfig from_json(const nlohmann::json& j);
  static AnalysisConfig from_file(const std::string& path);

  /// Canonical echo with every default materialized; feeding it back
  /// reproduces the identical report.
  nlohmann::ordered_json to_json() const;

  GroupPtr build_group() const;
  /// Exact probability vector with common validation; sum must be 1 within
  /// 1e-12 (as a rational).
  std::vector<Rational> parse_probs(const GroupPtr& group) const;
  Distribution float_distribution(const GroupPtr& group) const;
  /// Rational backend is strict: the exact sum must equal 1.
  RationalDistribution rational_distribution(const GroupPtr& group) const;
  MatrixMeasure build_matrix_measure() const;
};

}  // namespace groupwalk
