#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mhd2d/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mhd2d: pseudo-spectral 2D MHD with fractional dissipation"};
  app.require_subcommand(1);

  std::string config, spec, suite = "all", checkpoint, out;
  std::uint64_t seed = 0;
  double t_end = 0.0, dt = 0.0;
  int output_every = 0;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "Run one simulation from a config file");
  run->add_option("--config", config, "key=value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Run an (alpha, beta) grid of simulations");
  sweep->add_option("--spec", spec, "sweep spec file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output directory")->required();
  sweep->add_option("--threads", threads, "concurrent runs (default: hardware threads)");

  auto* check = app.add_subcommand("check", "Run property suites");
  check->add_option("--suite", suite, "all | lp | inequalities | dynamics")
      ->required()
      ->check(CLI::IsMember({"all", "lp", "inequalities", "dynamics"}));
  check->add_option("--seed", seed, "ensemble seed")->required();
  check->add_option("--out", out, "output directory")->required();

  auto* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("--checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  resume->add_option("--t-end", t_end, "new final time")->required();
  resume->add_option("--out", out, "output directory")->required();
  auto* dt_opt = resume->add_option("--dt", dt, "time step (default: from the run's manifest)");
  auto* every_opt = resume->add_option("--output-every", output_every, "steps between records");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return mhd2d::cmd_run(mhd2d::parse_config(config), out, std::cout).exit_code;
    if (*sweep) return mhd2d::cmd_sweep(mhd2d::parse_sweep(spec), out, std::cout, threads);
    if (*check) return mhd2d::cmd_check(suite, seed, out, std::cout);
    if (*resume) {
      mhd2d::ResumeOptions opts;
      opts.t_end = t_end;
      if (*dt_opt) opts.dt = dt;
      if (*every_opt) opts.output_every = output_every;
      return mhd2d::cmd_resume(checkpoint, opts, out, std::cout).exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "mhd2d: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
