// Command-line front end for the experiment runner.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "horoeq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kronecker point sets on horocycles, diophantine tools and pair correlation"};
  app.set_version_flag("--version", horoeq::cli::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string out_path;

  const char* names[] = {"equidistribute", "horocycle", "paircorr",
                         "counterexample", "diophantine", "heights"};
  std::vector<CLI::App*> subs;
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name, std::string("run a ") + name + " experiment");
    sub->add_option("-c,--config", config_path, "experiment config file")->required();
    sub->add_option("--set", sets, "override a config value: [section.]key=value");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", seed, "seed for all randomness");
    sub->add_option("-o,--out", out_path, "CSV output path (default: config output or stdout)");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : horoeq::cli::kExitConfig;
  }

  horoeq::cli::RunOptions opts;
  for (auto* sub : subs)
    if (sub->parsed()) {
      opts.subcommand = sub->get_name();
      if (sub->count("--seed")) opts.seed = seed;
    }
  opts.threads = threads;
  opts.overrides = sets;

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "config error: cannot open " << config_path << "\n";
    return horoeq::cli::kExitConfig;
  }
  std::stringstream text;
  text << in.rdbuf();

  std::ostringstream csv;
  const int code = horoeq::cli::run(text.str(), config_path, opts, csv, std::cerr);
  if (code != horoeq::cli::kExitOk) return code;

  if (out_path.empty()) {
    if (auto p = horoeq::cli::configured_output(text.str(), config_path, opts)) out_path = *p;
  }
  if (out_path.empty()) {
    std::cout << csv.str();
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << csv.str();
  return 0;
}
