// nbaudit: train a naive Bayes classifier on an audit population and draw
// evidence from its per-class posterior distributions.

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbaudit/pipeline.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> set;
};

nbaudit::RunConfig build_config(const CommonOptions& o) {
  nbaudit::RunConfig cfg;
  if (!o.config.empty()) cfg = nbaudit::load_config(o.config);
  nbaudit::ConfigMap overrides;
  for (const auto& kv : o.set) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw nbaudit::Error(nbaudit::ErrorKind::usage, "--set expects key=value, got '" + kv + "'");
    overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  nbaudit::apply_config(cfg, overrides);
  if (o.seed) cfg.seed = o.seed;
  if (!o.out.empty()) cfg.out = o.out;
  return cfg;
}

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Naive Bayes audit sampling toolkit"};
  app.require_subcommand(1);

  using Command = std::function<std::vector<std::string>(const nbaudit::RunConfig&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"train", "fit a model on a seeded train split and report test metrics", nbaudit::cmd_train},
      {"classify", "write per-record posteriors for a population", nbaudit::cmd_classify},
      {"sample", "draw audit evidence (user, item or hybrid strategy)", nbaudit::cmd_sample},
      {"evaluate", "KS and variability comparison of evidence against its class", nbaudit::cmd_evaluate},
      {"graph-features", "degree/clustering features and class binning from an edge list",
       nbaudit::cmd_graph_features},
      {"text-features", "keyword dictionary, count vectors and top keywords", nbaudit::cmd_text_features},
  };

  std::map<std::string, CommonOptions> opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto& o = opts[name];
    sub->add_option("-c,--config", o.config, "run configuration file (key = value lines)");
    sub->add_option("--seed", o.seed, "64-bit seed (overrides the config file)");
    sub->add_option("-o,--out", o.out, "output directory (overrides the config file)");
    sub->add_option("--set", o.set, "override a config key, e.g. --set confidence=50");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << "\n";
    return 2;
  }

  for (const auto& [name, help, fn] : commands) {
    if (!subs[name]->parsed()) continue;
    try {
      for (const auto& path : fn(build_config(opts[name]))) std::cout << path << "\n";
      return 0;
    } catch (const nbaudit::Error& e) {
      std::cerr << "error: " << nbaudit::to_string(e.kind()) << ": " << one_line(e.what()) << "\n";
      return nbaudit::exit_code_for(e.kind());
    } catch (const std::exception& e) {
      std::cerr << "error: runtime: " << one_line(e.what()) << "\n";
      return 1;
    }
  }
  return 2;
}
