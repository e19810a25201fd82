#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cma/config.hpp"
#include "cma/errors.hpp"
#include "cma/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Complex Monge-Ampere solver and estimate harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 1;
  for (const char* name : {"solve", "sweep", "check-inequalities", "moser", "sobolev"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cma::kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read " << config_path << "\n";
    return cma::kExitConfigError;
  }
  std::stringstream text;
  text << in.rdbuf();

  cma::RunConfig cfg;
  try {
    cfg = cma::parse_config(text.str(), *cma::parse_command(command));
    if (const char* seed = std::getenv("CMA_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(seed, &end, 10);
      if (end == seed || *end != '\0')
        throw cma::Error(cma::ErrorCode::ValidationError, "CMA_SEED: not an unsigned integer");
      cfg.apply_seed(v);
    }
  } catch (const cma::Error& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return cma::kExitConfigError;
  }
  return cma::run(cfg, out_dir, threads, std::cerr);
}
