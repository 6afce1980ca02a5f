#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "discordant/experiment.hpp"
#include "discordant/folner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Density, thickness and symbolic experiments on amenable semigroups"};
  app.require_subcommand(1);

  std::string spec_path;
  unsigned threads = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one experiment spec");
  run->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
  run->add_option("--threads", threads, "Worker threads (default: DISCORDANT_THREADS or all cores)");
  run->add_option("--out", out_dir, "Directory for relative output prefixes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : discordant::kExitError;
  }

  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "error: cannot read " << spec_path << "\n";
    return discordant::kExitError;
  }
  std::stringstream text;
  text << in.rdbuf();

  discordant::ExperimentSpec spec;
  try {
    spec = discordant::parse_spec(text.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return discordant::kExitError;
  }

  discordant::RunOptions opts;
  opts.threads = threads;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  const auto res = discordant::run_experiment(spec, opts);
  for (const auto& a : res.artifacts) std::cout << "wrote " << a << "\n";
  for (const auto& m : res.messages) std::cerr << (res.exit_code == discordant::kExitError ? "error: " : "") << m << "\n";
  if (res.exit_code == discordant::kExitAcceptance) std::cerr << "acceptance check failed\n";
  return res.exit_code;
}
