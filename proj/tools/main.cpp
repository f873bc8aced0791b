#include "suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using qbfs::cli::RunConfig;

void add_options(CLI::App* app, RunConfig& c) {
  app->add_option("--norm", c.norm, "Norm selector: lp:p=0.5, lorentz:p=2,q=0.5[,C=..], linf");
  app->add_option("--seed", c.seed, "Seed for all sampling");
  app->add_option("--samples", c.samples, "Sample count (0 keeps the suite default)");
  app->add_option("--out", c.out, "Report path (stdout when omitted)");
  app->add_option("--format", c.format, "Report format: json or csv");
  app->add_option("--n", c.n, "Dimension");
  app->add_option("--a-grid", c.a_grid, "Dilation grid start:stop:step or a comma list");
  app->add_option("--eps", c.eps, "Approximation accuracy");
  app->add_option("--input", c.input, "Step function JSON for approximate");
  app->add_flag("--trace", c.trace, "Include construction traces");
  app->add_option("--refine", c.refine, "Associate search refinement level");
  app->add_option("--value-grid", c.value_grid, "Associate search value grid size");
  app->add_option("--generator", c.generator, "Series generator: geometric:ratio=.., disjoint, single");
  app->add_option("--prefix", c.prefix, "Series prefix length");
  app->add_option("--tolerance", c.tolerance, "Relative tolerance for floating-point assertions");
}

int execute(const RunConfig& c) {
  const auto report = qbfs::cli::run_suite(c);
  const std::string text =
      c.format == "csv" ? qbfs::cli::report_csv(report) : qbfs::cli::report_json(report, c).dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.out);
    if (!out) throw std::invalid_argument("cannot write '" + c.out + "'");
    out << text;
  }
  for (const auto& a : report.assertions) {
    if (!a.passed) std::cerr << "FAIL " << a.id << ": " << a.witness << "\n";
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for quasi-Banach function spaces"};
  app.require_subcommand(1);
  RunConfig config;
  std::string config_path;

  auto* verify = app.add_subcommand("verify", "Run one verification suite");
  verify->add_option("suite", config.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(qbfs::cli::suite_names()));
  add_options(verify, config);

  auto* run = app.add_subcommand("run", "Run a suite described by a key=value config file");
  run->add_option("--config", config_path, "Config file")->required();
  add_options(run, config);

  std::vector<std::pair<CLI::App*, std::string>> aliases;
  for (const auto& name : qbfs::cli::suite_names()) {
    auto* sub = app.add_subcommand(name, "Alias for 'verify " + name + "'");
    add_options(sub, config);
    aliases.emplace_back(sub, name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      RunConfig from_file;
      qbfs::cli::load_config_file(config_path, from_file);
      // Flags given on the command line override the file.
      for (const auto* opt : run->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--config" || opt->get_name() == "--help") continue;
        const std::string name = opt->get_name().substr(2);
        if (name == "norm") from_file.norm = config.norm;
        else if (name == "seed") from_file.seed = config.seed;
        else if (name == "samples") from_file.samples = config.samples;
        else if (name == "out") from_file.out = config.out;
        else if (name == "format") from_file.format = config.format;
        else if (name == "n") from_file.n = config.n;
        else if (name == "a-grid") from_file.a_grid = config.a_grid;
        else if (name == "eps") from_file.eps = config.eps;
        else if (name == "input") from_file.input = config.input;
        else if (name == "trace") from_file.trace = config.trace;
        else if (name == "refine") from_file.refine = config.refine;
        else if (name == "value-grid") from_file.value_grid = config.value_grid;
        else if (name == "generator") from_file.generator = config.generator;
        else if (name == "prefix") from_file.prefix = config.prefix;
        else if (name == "tolerance") from_file.tolerance = config.tolerance;
      }
      config = from_file;
      if (config.suite.empty()) throw std::invalid_argument("config file does not name a suite");
    }
    for (const auto& [sub, name] : aliases) {
      if (sub->parsed()) config.suite = name;
    }
    return execute(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
