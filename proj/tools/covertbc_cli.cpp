// Command-line front end: one subcommand per batch computation, results to
// --out plus a JSON sidecar echoing the parameters.

#include <CLI11.hpp>

#include "covertbc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"covert broadcast-channel toolbox"};
  app.require_subcommand(1);

  covertbc::RunManifest manifest;
  std::vector<long long> n_values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", manifest.spec_path, "channel or gaussian spec file (JSON)")
        ->required();
    sub->add_option("--out", manifest.out_path, "results file")->required();
    sub->add_flag("--bits", manifest.bits, "report rates in bits instead of nats");
    sub->add_option("--seed", manifest.seed, "seed for all randomness");
  };

  CLI::App* capacity = app.add_subcommand("capacity", "covert capacities of the spec");
  add_common(capacity);

  CLI::App* condition = app.add_subcommand("condition", "time-division optimality check");
  add_common(condition);

  CLI::App* map = app.add_subcommand("map", "condition verdict over a (q0,q1) lattice");
  add_common(map);
  map->add_option("--grid-step", manifest.grid_step, "lattice step in (0, 0.1]");

  CLI::App* region = app.add_subcommand("region", "capacity region boundary");
  add_common(region);
  region->add_option("--resolution", manifest.resolution, "boundary points per edge");

  CLI::App* converse = app.add_subcommand("converse", "outer-bound sweep");
  add_common(converse);
  converse->add_option("--delta", manifest.delta, "covertness budget (nats)");
  converse->add_option("--n", n_values, "blocklengths (repeatable)");
  converse->add_option("--resolution", manifest.resolution, "gaussian sweep resolution");

  CLI::App* keys = app.add_subcommand("keys", "minimal key rates along the boundary");
  add_common(keys);
  keys->add_option("--resolution", manifest.resolution, "boundary points per edge");

  CLI::App* simulate = app.add_subcommand("simulate", "time-division Monte Carlo");
  add_common(simulate);
  simulate->add_option("--delta", manifest.delta, "covertness budget (nats)");
  simulate->add_option("--n", n_values, "blocklength");
  simulate->add_option("--rho", manifest.rho, "time share for receiver 1");
  simulate->add_option("--rates-fraction", manifest.rates_fraction, "back-off in (0,1]");
  simulate->add_option("--trials", manifest.trials, "Monte Carlo trials");

  CLI::App* sweep = app.add_subcommand("sweep", "simulate across blocklengths");
  add_common(sweep);
  sweep->add_option("--delta", manifest.delta, "covertness budget (nats)");
  sweep->add_option("--n", n_values, "blocklengths (repeatable)");
  sweep->add_option("--rho", manifest.rho, "time share for receiver 1");
  sweep->add_option("--rates-fraction", manifest.rates_fraction, "back-off in (0,1]");
  sweep->add_option("--trials", manifest.trials, "Monte Carlo trials per blocklength");

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : app.get_subcommands()) {
    auto command = covertbc::parse_command(sub->get_name());
    if (command) manifest.command = *command;
  }
  if (!n_values.empty()) manifest.n_values = n_values;

  return covertbc::dispatch(manifest);
}
