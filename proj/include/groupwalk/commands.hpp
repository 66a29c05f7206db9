#pragma once

#include <optional>
#include <string>

#include "groupwalk/config.hpp"

namespace groupwalk {

struct CommandResult {
  int exit_code = 0;
  std::string output;  // JSON report or CSV table
};

/// Exit codes: 0 converges, 3 diverges, 1 input error, 2 internal/cap error,
/// 4 indeterminate (spectrum only). Input errors surface as Error exceptions
/// from the config layer; exit_code_for maps them.
int exit_code_for(ErrorKind kind);

/// Full analysis: detector verdict, spectral cross-check, decay trace; for
/// matrix measures, orbit classification with fallback to moment
/// diagnostics. Writes the trace CSV when options.trace_path is set.
CommandResult cmd_analyze(const AnalysisConfig& config);

/// Convolution powers p^{*1}..p^{*steps} as CSV, one row per element.
CommandResult cmd_convolve(const AnalysisConfig& config, int steps);

/// SpectralSummary of the transition operator as JSON.
CommandResult cmd_spectrum(const AnalysisConfig& config);

/// Monte Carlo moment estimate for a matrix measure.
CommandResult cmd_sample(const AnalysisConfig& config, std::optional<int> walk_length,
                         std::optional<long long> samples,
                         std::optional<unsigned long long> seed);

std::string format_double(double value);

}  // namespace groupwalk
