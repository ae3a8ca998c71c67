#include "qbc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qbc/errors.hpp"

namespace qbc::cli {
namespace {

void add_path(CLI::App* sub, RunConfig& config, bool required) {
  auto* opt = sub->add_option("path", config.channel_path, "Channel file");
  if (required) opt->required();
}

void add_format(CLI::App* sub, RunConfig& config) {
  sub->add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  sub->add_option("--out", config.out_path, "Write results to this file instead of stdout");
}

void add_seed(CLI::App* sub, RunConfig& config) {
  sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Multiparty quantum channel analysis"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a channel file for completeness");
  add_path(validate, config, true);
  add_format(validate, config);

  auto* fidelity = app.add_subcommand("fidelity", "Channel, group, average, and minimum fidelities");
  add_path(fidelity, config, true);
  add_seed(fidelity, config);
  fidelity->add_option("--samples", config.samples, "Monte Carlo samples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  add_format(fidelity, config);

  auto* region = app.add_subcommand("region", "Sample achievable one-way rate tuples");
  add_path(region, config, true);
  add_seed(region, config);
  region->add_option("--n", config.blocklength, "Blocklength")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  auto* weights = region->add_option("--weights", config.weights, "Comma-separated weights")
                      ->delimiter(',');
  region->add_option("--grid", config.grid, "Simplex weight grid with step 1/K")
      ->excludes(weights);
  region->add_option("--restarts", config.restarts, "Optimizer restarts")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000}));
  add_format(region, config);

  auto* verify = app.add_subcommand("verify", "Run the identity and inequality checks");
  add_path(verify, config, false);
  verify->add_flag("--fixtures", config.fixtures, "Include the built-in fixture channels");
  add_seed(verify, config);
  verify->add_option("--samples", config.samples, "Monte Carlo samples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  verify->add_option("--tol-exact", config.tol_exact, "Tolerance for exact identities")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--tol-stat", config.tol_stat, "Statistical tolerance in standard errors")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--ensemble-size", config.ensemble_size, "Sampled ensemble size for d > 2")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  add_format(verify, config);

  auto* twirl = app.add_subcommand("twirl", "Write the twirled channel");
  add_path(twirl, config, true);
  add_seed(twirl, config);
  twirl->add_option("--ensemble-size", config.ensemble_size, "Sampled ensemble size for d > 2")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  twirl->add_option("--out", config.out_path, "Write the channel to this file instead of stdout");

  auto* teleport = app.add_subcommand("teleport",
                                      "Write the teleportation channel over the channel's Choi state");
  add_path(teleport, config, true);
  teleport->add_option("--out", config.out_path, "Write the channel to this file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitParseError;
  }
  if (verify->parsed() && !config.fixtures && config.channel_path.empty()) {
    err << "error: verify needs a channel path or --fixtures\n";
    return kExitParseError;
  }

  CommandResult result;
  try {
    if (validate->parsed()) result = cmd_validate(config);
    if (fidelity->parsed()) result = cmd_fidelity(config);
    if (region->parsed()) result = cmd_region(config);
    if (verify->parsed()) result = cmd_verify(config);
    if (twirl->parsed()) result = cmd_twirl(config);
    if (teleport->parsed()) result = cmd_teleport(config);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const CapacityExceeded& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const InvalidChannel& e) {
    err << "invalid channel: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  if (config.out_path.empty()) {
    out << result.output;
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    file << result.output;
    if (!file) {
      err << "error: cannot write " << config.out_path << '\n';
      return kExitCheckFailed;
    }
  }
  if (!result.diagnostic.empty()) err << result.diagnostic << '\n';
  return result.exit_code;
}

}  // namespace qbc::cli
