#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Radial Dunkl operators, sharp constants and verification runs"};
  std::string config;
  dunkl::cli::RunOptions opt;
  std::string out = ".";
  app.add_option("config", config, "JSON run configuration")->required();
  app.add_option("--out", out, "Directory for report.json and CSV tables");
  app.add_flag("--quiet", opt.quiet, "Suppress progress messages");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : dunkl::cli::bad_config;
  }
  opt.out_dir = out;
  return dunkl::cli::run_file(config, opt, std::cerr);
}
