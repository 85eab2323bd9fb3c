#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twwc/commands.hpp"
#include "twwc/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"two-way wiretap channel toolkit: rate regions, random-coding "
               "bounds, codebook simulation, inequality projection"};
  app.require_subcommand(1);

  std::string in_path, out_path, format = "json";
  std::uint64_t seed = 1;
  bool bits = false;
  int s_grid = 0, grid = 0;
  long trials = 0;
  std::string factor_mode, flavor;
  std::vector<double> cost;
  std::vector<std::string> eliminate;

  const auto add_common = [&](CLI::App* cmd, bool needs_in) {
    auto* in = cmd->add_option("--in", in_path, "input spec (JSON)");
    if (needs_in) in->required();
    cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--bits", bits, "display rates/leakages in bits (nats internally)");
    cmd->add_option("--seed", seed, "master seed for all randomized work");
    cmd->add_option("--s-grid", s_grid, "order-parameter grid size");
    cmd->add_option("--grid", grid, "law / power lattice resolution");
    cmd->add_option("--trials", trials, "Monte Carlo trials or sampled codebooks");
    cmd->add_option("--factor-mode", factor_mode, "exact | bound polynomial factors")
        ->check(CLI::IsMember({"exact", "bound"}));
    cmd->add_option("--flavor", flavor, "joint | individual | outer")
        ->check(CLI::IsMember({"joint", "individual", "outer"}));
    cmd->add_option("--cost", cost, "cost budgets c1 c2")->expected(2);
    return cmd;
  };

  add_common(app.add_subcommand("region", "achievable rate region"), true);
  add_common(app.add_subcommand("exponent", "error / leakage bound sweep"), true);
  add_common(app.add_subcommand("simulate", "codebook trials + exact leakage"), true);
  add_common(app.add_subcommand("verify-resolvability", "resolvability bound check"), true);
  add_common(app.add_subcommand("verify-gallager", "random-coding error bound check"), true);
  auto* fm = add_common(app.add_subcommand("fm", "Fourier-Motzkin projection"), true);
  fm->add_option("--eliminate", eliminate, "variables to eliminate, in order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    twwc::CommandOptions opt;
    opt.format = format;
    opt.bits = bits;
    opt.seed = seed;
    if (s_grid > 0) opt.s_grid = s_grid;
    if (grid > 0) opt.grid = grid;
    if (trials > 0) opt.trials = trials;
    if (!factor_mode.empty()) opt.factor_mode = factor_mode;
    if (!flavor.empty()) opt.flavor = flavor;
    if (cost.size() == 2) opt.cost_budgets = std::make_pair(cost[0], cost[1]);
    opt.eliminate = eliminate;

    const twwc::Json spec = twwc::load_json_file(in_path);
    std::string csv;
    const twwc::Json artifact = twwc::run_command(command, spec, opt, &csv);
    const std::string payload = format == "csv" ? csv : artifact.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << payload;
    } else {
      twwc::atomic_write(out_path, payload);
    }
    return 0;
  } catch (const twwc::SizingError& e) {
    std::cerr << "sizing error: " << e.what() << "\n";
    return 3;
  } catch (const twwc::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const twwc::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (value " << e.best_value
              << ", residual " << e.residual << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
