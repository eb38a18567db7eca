#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gribov/report.hpp"

using gribov::report::Command;
using gribov::report::Format;
using gribov::report::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of Gribov block operator matrices", "gribov"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GRIBOV_VERSION);

  RunConfig config;
  std::string format = "json";

  const std::pair<Command, const char*> commands[] = {
      {Command::kSpectrum, "stabilized eigenvalues of the truncated block matrix"},
      {Command::kEnclosure, "enclosure region and membership of the stabilized spectrum"},
      {Command::kSubordination, "numerical verification of the subordination certificates"},
      {Command::kConditions, "closedness and self-adjointness conditions"},
      {Command::kCounting, "eigenvalue counting asymptotics of the diagonal blocks"},
      {Command::kRiesz, "eigenbasis and spectral projector conditioning"},
      {Command::kExampleP6, "the parametrised block family p_ij = a^-(i+j)"},
      {Command::kSchema, "print the JSON schema of a spec document"},
  };

  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(gribov::report::command_name(command), help);
    sub->callback([&config, command = command] { config.command = command; });
    sub->add_option("--out", config.out_path, "report path (default: stdout)");
    if (command == Command::kSchema) continue;
    sub->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    if (command == Command::kExampleP6) {
      sub->add_option("--n", config.p6_n, "number of blocks")->capture_default_str();
      sub->add_option("--a", config.p6_a, "decay base a")->capture_default_str();
      sub->add_option("--lambda2", config.p6_lambda2, "magic coupling |lambda''|")
          ->capture_default_str();
      continue;
    }
    sub->add_option("--spec", config.spec_path, "JSON block specification")->required();
    sub->add_option("--trunc", config.trunc, "truncation size per block")->capture_default_str();
    sub->add_option("--growth", config.growth, "reference truncation factor")
        ->capture_default_str();
    sub->add_option("--rel-tol", config.rel_tol, "stabilization tolerance")
        ->capture_default_str();
    sub->add_option("--alpha-margin", config.alpha_margin, "sector opening margin")
        ->capture_default_str();
    sub->add_option("--gap-factor", config.gap_factor, "cluster gap factor")
        ->capture_default_str();
    if (command == Command::kSubordination) {
      sub->add_option("--trial-vectors", config.trial_vectors, "random trial vectors")
          ->capture_default_str();
      sub->add_option("--seed", config.seed, "trial vector seed")->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gribov::report::kExitValidation;
  }
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  return gribov::report::run(config, std::cout, std::cerr);
}
