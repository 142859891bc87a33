#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using cesaro::cli::Format;
  cesaro::cli::RunConfig cfg;
  CLI::App app{"Cesaro space workbench: norms, embeddings, Opial moduli and inequality checks"};
  app.add_option("command", cfg.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember(cesaro::cli::commands()));
  app.add_option("input", cfg.input_path, "JSON input file");
  app.add_option("--p", cfg.p, "Outer exponent");
  app.add_option("--tol", cfg.tol, "Tolerance (sequence tail or quadrature relative)");
  app.add_option("--tau", cfg.tau, "Level for the eta recipes");
  app.add_option("--M", cfg.M, "Bound on lim ||f_n(t)||");
  app.add_option("--R", cfg.R, "Bound on sup ||f_n||");
  app.add_option("--K", cfg.K, "Bound on ||f||_r");
  app.add_option("--r", cfg.r, "Integrability exponent r > p");
  app.add_option("--eps", cfg.eps, "Lower bound on ||x|| or ||f||");
  app.add_option("--out", cfg.out_path, "Report file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}}));
  app.add_option("--seed", cfg.seed, "Seed for randomized suites");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cesaro::cli::kExitSchema;
  }
  return cesaro::cli::run(cfg, std::cout, std::cerr);
}
