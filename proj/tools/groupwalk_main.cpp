#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "groupwalk/commands.hpp"

namespace {

int emit(const groupwalk::CommandResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    out << result.output;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence analysis for products of i.i.d. group-valued random variables"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int steps = 8;
  std::optional<int> walk_length;
  std::optional<long long> samples;
  std::optional<unsigned long long> seed;

  auto* analyze = app.add_subcommand("analyze", "Full convergence report");
  analyze->add_option("config", config_path, "config file")->required();
  analyze->add_option("--out", out_path, "write the report to a file");

  auto* convolve = app.add_subcommand("convolve", "Convolution power table (CSV)");
  convolve->add_option("config", config_path, "config file")->required();
  convolve->add_option("--out", out_path, "write the table to a file");
  convolve->add_option("--steps", steps, "number of convolution powers");

  auto* spectrum = app.add_subcommand("spectrum", "Transition-operator spectrum");
  spectrum->add_option("config", config_path, "config file")->required();
  spectrum->add_option("--out", out_path, "write the summary to a file");

  auto* sample = app.add_subcommand("sample", "Monte Carlo moment estimate");
  sample->add_option("config", config_path, "config file")->required();
  sample->add_option("--out", out_path, "write the estimate to a file");
  sample->add_option("--walk-length", walk_length, "steps per sampled walk");
  sample->add_option("--samples", samples, "number of sampled walks");
  sample->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    groupwalk::AnalysisConfig config = groupwalk::AnalysisConfig::from_file(config_path);
    groupwalk::CommandResult result;
    if (app.got_subcommand(analyze)) result = groupwalk::cmd_analyze(config);
    else if (app.got_subcommand(convolve)) result = groupwalk::cmd_convolve(config, steps);
    else if (app.got_subcommand(spectrum)) result = groupwalk::cmd_spectrum(config);
    else result = groupwalk::cmd_sample(config, walk_length, samples, seed);
    return emit(result, out_path);
  } catch (const groupwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return groupwalk::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
