#include "groupwalk/commands.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "groupwalk/obstruction.hpp"
#include "groupwalk/spectral.hpp"

namespace groupwalk {

using nlohmann::ordered_json;

namespace {

constexpr double kReachTarget = 1e-6;

ordered_json complex_pair(const std::complex<double>& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json real_matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json spectral_json(const SpectralSummary& summary, SpectralVerdict verdict,
                           bool estimate) {
  ordered_json eigs = ordered_json::array();
  for (const auto& v : summary.eigenvalues) eigs.push_back(complex_pair(v));
  ordered_json j;
  j["eigenvalues"] = std::move(eigs);
  j["unit_circle_count"] = summary.unit_circle_count;
  j["second_modulus"] = summary.second_modulus;
  j["tol"] = summary.tol;
  j["verdict"] = to_string(verdict);
  j["estimate"] = estimate;
  return j;
}

ordered_json obstruction_json(const Obstruction& obstruction) {
  ordered_json j;
  j["subgroup_members"] = obstruction.subgroup.members();
  j["coset_rep"] = obstruction.coset_rep;
  j["period"] = obstruction.period;
  j["normal_in_support"] = true;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << content;
}

template <class Scalar>
std::string trace_csv(const std::vector<std::pair<int, Scalar>>& trace) {
  std::ostringstream out;
  out << "n,tv\n";
  for (const auto& [n, tv] : trace) {
    if constexpr (std::is_floating_point_v<Scalar>) out << n << "," << format_double(tv) << "\n";
    else out << n << "," << to_string(tv) << "\n";
  }
  return out.str();
}

// Finite-pipeline analysis shared by the plain finite path and the
// classified-orbit path.
ordered_json analyze_finite(const Distribution& step,
                            const RationalDistribution* exact_step, const Options& options,
                            int* exit_code) {
  const GroupPtr& group = step.group();
  ConvergenceVerdict result = verdict(step, options.atom_threshold);
  const Subgroup& support = result.support;

  ordered_json j;
  j["group"] = ordered_json{{"order", group->order()}};
  ordered_json support_json;
  support_json["order"] = support.size();
  support_json["members"] = support.members();
  ordered_json labels = ordered_json::array();
  for (element_t m : support.members()) labels.push_back(group->label(m));
  support_json["labels"] = std::move(labels);
  j["support"] = std::move(support_json);

  j["verdict"] = result.converges() ? "converges" : "diverges";
  j["obstruction"] = result.obstruction ? obstruction_json(*result.obstruction)
                                        : ordered_json(nullptr);

  // Spectral cross-check; an estimate above the dense cap.
  TransitionOperator op = transition_operator(step);
  if (group->order() <= options.eig_cap) {
    SpectralSummary summary = spectrum(op, options.spectral_tol, options.eig_cap);
    SpectralVerdict sv = spectral_verdict(step, options.spectral_tol, options.eig_cap);
    j["spectral"] = spectral_json(summary, sv, false);
  } else {
    ordered_json sj;
    sj["second_modulus"] = second_modulus_estimate(op, 200, options.seed);
    sj["tol"] = options.spectral_tol;
    sj["estimate"] = true;
    j["spectral"] = std::move(sj);
  }

  ordered_json decay;
  decay["n_max"] = options.n_max;
  std::optional<int> reached;
  double final_tv = 0.0;
  std::string csv;
  if (exact_step != nullptr) {
    auto trace = decay_trace(*exact_step, options.n_max, Rational(options.atom_threshold));
    for (const auto& [n, tv] : trace)
      if (!reached && tv < Rational(1, 1000000)) reached = n;
    final_tv = to_double(trace.back().second);
    csv = trace_csv(trace);
  } else {
    auto trace = decay_trace(step, options.n_max, options.atom_threshold);
    for (const auto& [n, tv] : trace)
      if (!reached && tv < kReachTarget) reached = n;
    final_tv = trace.back().second;
    csv = trace_csv(trace);
  }
  decay["final_tv"] = final_tv;
  decay["first_n_below_1e-6"] = reached ? ordered_json(*reached) : ordered_json(nullptr);
  if (options.trace_path) {
    write_file(*options.trace_path, csv);
    decay["trace_path"] = *options.trace_path;
  } else {
    decay["trace_path"] = nullptr;
  }
  j["decay"] = std::move(decay);

  *exit_code = result.converges() ? 0 : 3;
  return j;
}

ordered_json moment_checks_json(const MatrixMeasure& measure, const Options& options,
                                bool* all_settled) {
  ordered_json checks = ordered_json::array();
  *all_settled = true;
  for (int degree = 1; degree <= options.tensor_degree; ++degree) {
    MomentOperator op = moment_operator(measure, degree);
    MomentDecayCheck check = moment_decay_check(op, options.matrix_horizon, options.settle_tol);
    ordered_json cj;
    cj["degree"] = check.degree;
    cj["final_norm"] = check.final_norm;
    cj["min_norm"] = check.min_norm;
    cj["min_norm_at"] = check.min_norm_at;
    cj["mid_gap"] = check.mid_gap;
    cj["tail_gap"] = check.tail_gap;
    cj["settled"] = check.settled;
    checks.push_back(std::move(cj));
    if (!check.settled) *all_settled = false;
  }
  return checks;
}

ordered_json analyze_matrix(const AnalysisConfig& config, int* exit_code) {
  const Options& options = config.options;
  MatrixMeasure measure = config.build_matrix_measure();

  ordered_json j;
  bool all_settled = true;
  ordered_json checks = moment_checks_json(measure, options, &all_settled);

  std::optional<ClassifiedOrbit> orbit;
  if (measure.is_finite())
    orbit = classify_finite_orbit(measure, options.orbit_cap, options.orbit_tol);

  if (orbit) {
    // Exact pipeline on the abstract group; atom probabilities that landed
    // on the same element accumulate.
    std::vector<double> probs(orbit->group->order(), 0.0);
    const auto& atoms = measure.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) probs[orbit->atom_elements[i]] += atoms[i].prob;
    Distribution step = Distribution::make(orbit->group, std::move(probs));

    j["classified"] = true;
    j["orbit"] = ordered_json{{"order", orbit->group->order()},
                              {"atom_elements", orbit->atom_elements}};
    ordered_json exact = analyze_finite(step, nullptr, options, exit_code);
    j["verdict"] = exact["verdict"];
    j["exact"] = std::move(exact);
    j["moment_checks"] = std::move(checks);
    j["numerical_verdict"] = all_settled ? "converges" : "diverges";
  } else {
    j["classified"] = false;
    j["orbit"] = nullptr;
    j["moment_checks"] = std::move(checks);
    j["numerical_verdict"] = all_settled ? "converges" : "diverges";
    j["verdict"] = j["numerical_verdict"];
    j["note"] = "necessary-condition check at tensor degree <= " +
                std::to_string(options.tensor_degree) +
                "; no sufficient certificate for unclassified measures";
    *exit_code = all_settled ? 0 : 3;
  }
  return j;
}

ordered_json report_header(const AnalysisConfig& config) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["config"] = config.to_json();
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotLatinSquare:
    case ErrorKind::NotAssociative:
    case ErrorKind::NoIdentity:
    case ErrorKind::NoInverse:
    case ErrorKind::UnknownPreset:
    case ErrorKind::GroupMismatch:
    case ErrorKind::InvalidDistribution:
    case ErrorKind::EmptySupport:
    case ErrorKind::NoClosedForm:
    case ErrorKind::SamplerUnavailable:
    case ErrorKind::ConfigError:
    case ErrorKind::IoError:
      return 1;
    default:
      return 2;
  }
}

CommandResult cmd_analyze(const AnalysisConfig& config) {
  ordered_json report = report_header(config);
  int exit_code = 0;
  if (config.is_matrix()) {
    report["kind"] = "matrix";
    report["analysis"] = analyze_matrix(config, &exit_code);
    report["verdict"] = report["analysis"]["verdict"];
  } else {
    report["kind"] = "finite";
    GroupPtr group = config.build_group();
    if (config.options.backend == Backend::Rational) {
      RationalDistribution exact = config.rational_distribution(group);
      Distribution step = to_double_distribution(exact);
      report["analysis"] = analyze_finite(step, &exact, config.options, &exit_code);
    } else {
      Distribution step = config.float_distribution(group);
      report["analysis"] = analyze_finite(step, nullptr, config.options, &exit_code);
    }
    report["verdict"] = report["analysis"]["verdict"];
  }
  return CommandResult{exit_code, report.dump(2) + "\n"};
}

CommandResult cmd_convolve(const AnalysisConfig& config, int steps) {
  if (config.is_matrix())
    throw Error(ErrorKind::ConfigError, "convolve needs a finite group source");
  if (steps < 1) throw Error(ErrorKind::ConfigError, "--steps must be >= 1");
  GroupPtr group = config.build_group();

  std::ostringstream out;
  out << "element,label";
  for (int n = 1; n <= steps; ++n) out << ",n" << n;
  out << "\n";

  if (config.options.backend == Backend::Rational) {
    RationalDistribution p = config.rational_distribution(group);
    std::vector<RationalDistribution> powers{p};
    for (int n = 2; n <= steps; ++n) powers.push_back(convolve(powers.back(), p));
    for (element_t g = 0; g < group->order(); ++g) {
      out << g << "," << group->label(g);
      for (const auto& q : powers) out << "," << to_string(q.prob(g));
      out << "\n";
    }
  } else {
    Distribution p = config.float_distribution(group);
    std::vector<Distribution> powers{p};
    for (int n = 2; n <= steps; ++n) powers.push_back(convolve(powers.back(), p));
    for (element_t g = 0; g < group->order(); ++g) {
      out << g << "," << group->label(g);
      for (const auto& q : powers) out << "," << format_double(q.prob(g));
      out << "\n";
    }
  }
  return CommandResult{0, out.str()};
}

CommandResult cmd_spectrum(const AnalysisConfig& config) {
  if (config.is_matrix())
    throw Error(ErrorKind::ConfigError, "spectrum needs a finite group source");
  GroupPtr group = config.build_group();
  Distribution step = config.float_distribution(group);

  TransitionOperator op = transition_operator(step);
  SpectralSummary summary = spectrum(op, config.options.spectral_tol, config.options.eig_cap);
  SpectralVerdict verdict =
      spectral_verdict(step, config.options.spectral_tol, config.options.eig_cap);

  ordered_json report = report_header(config);
  report["kind"] = "spectrum";
  report["spectral"] = spectral_json(summary, verdict, false);

  int exit_code = verdict == SpectralVerdict::Converges   ? 0
                  : verdict == SpectralVerdict::Diverges ? 3
                                                          : 4;
  return CommandResult{exit_code, report.dump(2) + "\n"};
}

CommandResult cmd_sample(const AnalysisConfig& config, std::optional<int> walk_length,
                         std::optional<long long> samples,
                         std::optional<unsigned long long> seed) {
  if (!config.is_matrix())
    throw Error(ErrorKind::SamplerUnavailable, "sample needs a matrix_measure source");
  MatrixMeasure measure = config.build_matrix_measure();

  const int n = walk_length.value_or(config.options.walk_length);
  const long long count = samples.value_or(config.options.samples);
  const unsigned long long s = seed.value_or(config.options.seed);

  MomentOperator estimate = estimate_moment(measure, n, count, s);

  ordered_json report = report_header(config);
  report["kind"] = "sample";
  ordered_json e;
  e["dimension"] = estimate.dimension;
  e["tensor_degree"] = estimate.tensor_degree;
  e["walk_length"] = estimate.estimate->walk_length;
  e["samples"] = estimate.estimate->samples;
  e["seed"] = estimate.estimate->seed;
  e["matrix"] = matrix_json(estimate.matrix);
  e["standard_error"] = real_matrix_json(estimate.estimate->standard_error);
  e["max_standard_error"] = estimate.estimate->standard_error.maxCoeff();
  report["estimate"] = std::move(e);
  return CommandResult{0, report.dump(2) + "\n"};
}

}  // namespace groupwalk
