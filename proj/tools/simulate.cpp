#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lrvm/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dynamical low-rank simulator for the reduced 1x2v Vlasov-Maxwell system"};

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool oracle = false;

  app.add_option("config", config_path, "configuration file (key = value lines)")
      ->required();
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--seed", seed, "rng seed for padding vectors (overrides seed)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { have_seed = true; });
  app.add_flag("--oracle", oracle,
               "run the full-tensor reference solver instead (small grids only)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open '" << config_path << "'\n";
      return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    lrvm::RunConfig cfg = lrvm::parse_config(buffer.str());
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (have_seed) cfg.seed = seed;
    if (oracle) cfg.oracle = true;

    return int(lrvm::run(cfg, &std::cerr));
  } catch (const lrvm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
}
