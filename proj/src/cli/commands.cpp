#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fixtures.hpp"
#include "qbc/builders.hpp"
#include "qbc/capacity.hpp"
#include "qbc/channel_io.hpp"
#include "qbc/cli.hpp"
#include "qbc/connection_frame.hpp"
#include "qbc/errors.hpp"
#include "qbc/fidelity.hpp"
#include "qbc/haar.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocols.hpp"

namespace qbc::cli {
namespace {

std::string subset_name(const std::string& prefix, const std::vector<std::size_t>& subset) {
  std::string s = prefix + "{";
  for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "," : "") + std::to_string(subset[i]);
  return s + "}";
}

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  if (n > kMaxSubsetConnections) throw CapacityExceeded("more than 16 connections");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(i);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<SubspaceBasis> full_subspaces(const ConnectionGraph& graph) {
  std::vector<SubspaceBasis> out;
  for (const auto d : graph.ref_dims()) out.push_back(SubspaceBasis::full(d));
  return out;
}

std::vector<DensityOperator> random_inputs(const ConnectionGraph& graph, RandomStream& rng) {
  std::vector<DensityOperator> out;
  for (const auto d : graph.ref_dims()) out.push_back(random_density(SystemLayout({d}), rng));
  return out;
}

// (I (x) ch)(Phi+) with a single reference leg of the full input dimension.
DensityOperator reference_output(const KrausChannel& ch) {
  const std::size_t d = ch.in_dim();
  std::vector<std::size_t> dims{d};
  for (const auto o : ch.out_layout().dims()) dims.push_back(o);
  return DensityOperator(apply_with_reference_raw(ch, phi_plus(d).matrix(), d), SystemLayout(dims),
                         1e-9);
}

// One row per check: passes iff lhs <= rhs.
class CheckTable {
 public:
  CheckTable() : table_("verify", {"fixture", "check", "mode", "lhs", "rhs", "status"}) {}

  void add(const std::string& fixture, const std::string& check, const std::string& mode,
           double lhs, double rhs) {
    const bool pass = lhs <= rhs;
    failed_ = failed_ || !pass;
    table_.add({fixture, check, mode, lhs, rhs, pass ? "pass" : "fail"});
  }
  void skip(const std::string& fixture, const std::string& check, const std::string& reason) {
    table_.add({fixture, check, reason, nullptr, nullptr, "skip"});
  }
  bool failed() const { return failed_; }
  const Table& table() const { return table_; }

 private:
  Table table_;
  bool failed_ = false;
};

void verify_channel(const std::string& name, const KrausChannel& ch, const ConnectionGraph& graph,
                    const RunConfig& config, std::uint64_t index, CheckTable& checks) {
  const RandomStream root = RandomStream(config.seed, 0xC4EC5).substream(index);
  const double tol = config.tol_exact;

  // Coherent-information checks on (I (x) ch)(Phi+) need no connection structure.
  {
    RandomStream rng = root.substream(1);
    const DensityOperator rho = reference_output(ch);
    const auto split = BipartiteSplit::leading(rho.layout(), 1);
    const SystemLayout out_flat(ch.out_layout().dims());
    const KrausChannel post = builders::random_channel(out_flat, out_flat, 2, rng);
    checks.add(name, "dpi", "exact", -check_dpi(rho, split, post), tol);

    const DensityOperator noise = random_density(rho.layout(), rng);
    const DensityOperator sigma(0.9 * rho.matrix() + 0.1 * noise.matrix(), rho.layout());
    const auto gap = continuity_gap(rho, sigma, split);
    checks.add(name, "continuity", "exact", gap.lhs, gap.rhs + tol);
  }

  try {
    const ConnectionFrame frame(ch, graph);
  } catch (const DimensionError&) {
    for (const char* check : {"average_identity", "route_equality", "monotonicity", "convexity",
                              "two_design", "phase_average"}) {
      checks.skip(name, check, "connection legs not square");
    }
    return;
  }
  const std::size_t n = graph.size();

  {
    RandomStream rng = root.substream(2);
    const double exact = average_fidelity_exact(ch, graph);
    const auto mc = average_fidelity_mc(ch, graph, config.samples, rng);
    checks.add(name, "average_identity", "statistical", std::abs(exact - mc.mean),
               config.tol_stat * mc.standard_error + tol);
  }
  {
    double worst = 0.0;
    for (const auto& subset : nonempty_subsets(n)) {
      worst = std::max(worst,
                       std::abs(group_channel_fidelity(ch, graph, subset, FidelityRoute::definition) -
                                group_channel_fidelity(ch, graph, subset, FidelityRoute::kraus_trace)));
    }
    checks.add(name, "route_equality", "exact", worst, tol);
  }
  {
    RandomStream rng = root.substream(3);
    const auto inputs = random_inputs(graph, rng);
    const auto report = fidelity_report(ch, inputs, graph);
    double worst = -1.0;
    for (const auto& [subset, value] : report.group_values) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
        auto bigger = subset;
        bigger.push_back(j);
        std::sort(bigger.begin(), bigger.end());
        worst = std::max(worst, report.group_values.at(bigger) - value);
      }
    }
    if (n == 1) worst = report.global_value - 1.0;
    checks.add(name, "monotonicity", "exact", worst, tol);
  }
  {
    RandomStream rng = root.substream(4);
    auto inputs = random_inputs(graph, rng);
    const SystemLayout leg({graph[0].ref_dim});
    const DensityOperator a = random_density(leg, rng);
    const DensityOperator b = random_density(leg, rng);
    const double p = 0.37;
    inputs[0] = a;
    const double fa = entanglement_fidelity(ch, inputs, graph);
    inputs[0] = b;
    const double fb = entanglement_fidelity(ch, inputs, graph);
    inputs[0] = DensityOperator(p * a.matrix() + (1.0 - p) * b.matrix(), leg);
    const double fmix = entanglement_fidelity(ch, inputs, graph);
    checks.add(name, "convexity", "exact", fmix, p * fa + (1.0 - p) * fb + tol);
  }
  {
    RandomStream rng = root.substream(5);
    std::vector<UnitaryEnsemble> ensembles;
    bool exact_design = true;
    for (std::size_t i = 0; i < n; ++i) {
      RandomStream sub = rng.substream(i);
      ensembles.push_back(design_ensemble(graph[i].ref_dim, config.ensemble_size, sub));
      exact_design = exact_design && ensembles.back().exact_design;
    }
    const double exact = average_fidelity_exact(ch, graph);
    const ConnectionChannel original(ch, graph);
    constexpr std::size_t kProbes = 5;
    double worst = -1.0;
    if (exact_design) {
      const ConnectionChannel twirled(twirl_channel(ch, graph, ensembles), graph);
      for (std::size_t probe = 0; probe < kProbes; ++probe) {
        std::vector<ComplexVector> states;
        for (const auto d : graph.ref_dims()) states.push_back(haar_state(d, rng));
        worst = std::max(worst, std::abs(twirled.pure_state_fidelity(states) - exact));
      }
      checks.add(name, "two_design", "exact", worst, tol);
    } else {
      // The twirled fidelity at a probe is the mean over ensemble elements.
      for (std::size_t probe = 0; probe < kProbes; ++probe) {
        std::vector<ComplexVector> probe_states;
        for (const auto d : graph.ref_dims()) probe_states.push_back(haar_state(d, rng));
        std::vector<std::size_t> idx(n, 0);
        double sum = 0.0, sum_sq = 0.0;
        std::size_t count = 0;
        for (;;) {
          std::vector<ComplexVector> states;
          for (std::size_t i = 0; i < n; ++i) {
            states.push_back(ensembles[i].elements[idx[i]] * probe_states[i]);
          }
          const double f = original.pure_state_fidelity(states);
          sum += f;
          sum_sq += f * f;
          ++count;
          std::size_t i = n;
          while (i > 0 && ++idx[i - 1] == ensembles[i - 1].size()) idx[--i] = 0;
          if (i == 0) break;
        }
        const double c = static_cast<double>(count);
        const double mean = sum / c;
        const double var = std::max(0.0, (sum_sq - c * mean * mean) / (c - 1.0));
        worst = std::max(worst, std::abs(mean - exact) - config.tol_stat * std::sqrt(var / c));
      }
      checks.add(name, "two_design", "statistical (sampled ensemble)", worst, tol);
    }
  }
  {
    MinFidelityOptions options;
    options.restarts = 8;
    options.seed = root.substream(6)();
    const auto subspaces = full_subspaces(graph);
    const auto report = phase_average_bound(ch, graph, subspaces, options);
    checks.add(name, "phase_average", "heuristic",
               1.0 - report.fe, std::pow(1.5, static_cast<double>(n)) * report.eta + tol);
  }
}

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
  const auto doc = read_channel_file(config.channel_path, false);
  const auto report = validate(doc.channel);
  Table table("validate", {"name", "value"});
  table.add({"in_dims", doc.channel.in_layout().dims()});
  table.add({"out_dims", doc.channel.out_layout().dims()});
  table.add({"kraus_count", doc.channel.kraus_count()});
  Cell conns = Cell::array();
  for (const auto& c : doc.graph.connections()) {
    conns.push_back(std::to_string(c.sender) + "->" + std::to_string(c.receiver) +
                    ":d=" + std::to_string(c.ref_dim));
  }
  table.add({"connections", conns});
  table.add({"completeness_defect", report.defect});
  table.add({"valid", report.ok});
  CommandResult result;
  result.output = table.render(config.format);
  if (!report.ok) {
    result.exit_code = kExitCheckFailed;
    result.diagnostic = "invalid channel: completeness defect " + Cell(report.defect).dump();
  }
  return result;
}

CommandResult cmd_fidelity(const RunConfig& config) {
  const auto doc = read_channel_file(config.channel_path);
  const auto& ch = doc.channel;
  const auto& graph = doc.graph;
  Table table("fidelity", {"name", "value", "method", "stderr"});
  for (const auto route : {FidelityRoute::definition, FidelityRoute::kraus_trace}) {
    table.add({"channel_fidelity", channel_fidelity(ch, graph, route),
               route == FidelityRoute::definition ? "definition" : "kraus_trace", nullptr});
  }
  if (graph.size() > 1) {
    for (const auto& subset : nonempty_subsets(graph.size())) {
      if (subset.size() == graph.size()) continue;
      for (const auto route : {FidelityRoute::definition, FidelityRoute::kraus_trace}) {
        table.add({subset_name("group_fidelity", subset),
                   group_channel_fidelity(ch, graph, subset, route),
                   route == FidelityRoute::definition ? "definition" : "kraus_trace", nullptr});
      }
    }
  }
  table.add({"average_fidelity", average_fidelity_exact(ch, graph), "exact", nullptr});
  RandomStream rng(config.seed, 1);
  const auto mc = average_fidelity_mc(ch, graph, config.samples, rng);
  table.add({"average_fidelity", mc.mean, "monte_carlo", mc.standard_error});
  MinFidelityOptions options;
  options.seed = config.seed;
  const auto subspaces = full_subspaces(graph);
  table.add({"min_fidelity", min_subspace_fidelity(ch, graph, subspaces, options).value,
             "heuristic_min", nullptr});
  return {kExitOk, table.render(config.format), ""};
}

CommandResult cmd_region(const RunConfig& config) {
  const auto doc = read_channel_file(config.channel_path);
  RegionOptions options;
  options.restarts = config.restarts;
  options.seed = config.seed;
  std::vector<RateTuple> points;
  if (!config.weights.empty()) {
    points.push_back(region_sample(doc.channel, doc.graph, config.blocklength, config.weights, options));
  } else if (config.grid > 0) {
    const auto grid = simplex_weight_grid(doc.graph.size(), config.grid);
    points = region_pareto(doc.channel, doc.graph, config.blocklength, grid, options);
  } else {
    const std::vector<double> ones(doc.graph.size(), 1.0);
    points.push_back(region_sample(doc.channel, doc.graph, config.blocklength, ones, options));
  }
  Table table("region", {"point", "weights", "rates", "objective", "restart"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    table.add({i, points[i].weights, points[i].rates, points[i].objective, points[i].restart});
  }
  return {kExitOk, table.render(config.format), ""};
}

CommandResult cmd_verify(const RunConfig& config) {
  CheckTable checks;
  if (config.fixtures) {
    const auto fixtures = builtin_fixtures();
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      verify_channel(fixtures[i].name, fixtures[i].channel, fixtures[i].graph, config, i, checks);
    }
  }
  if (!config.channel_path.empty()) {
    const auto doc = read_channel_file(config.channel_path);
    verify_channel(config.channel_path, doc.channel, doc.graph, config, 1000, checks);
  }
  CommandResult result;
  result.output = checks.table().render(config.format);
  if (checks.failed()) {
    result.exit_code = kExitCheckFailed;
    result.diagnostic = "one or more checks failed";
  }
  return result;
}

CommandResult cmd_twirl(const RunConfig& config) {
  const auto doc = read_channel_file(config.channel_path);
  RandomStream rng(config.seed, 5);
  std::vector<UnitaryEnsemble> ensembles;
  for (std::size_t i = 0; i < doc.graph.size(); ++i) {
    RandomStream sub = rng.substream(i);
    ensembles.push_back(design_ensemble(doc.graph[i].ref_dim, config.ensemble_size, sub));
  }
  const KrausChannel twirled = twirl_channel(doc.channel, doc.graph, ensembles);
  return {kExitOk, write_channel(twirled, doc.graph), ""};
}

CommandResult cmd_teleport(const RunConfig& config) {
  const auto doc = read_channel_file(config.channel_path);
  const auto& ch = doc.channel;
  if (doc.graph.size() != 1 || ch.in_dim() != ch.out_dim()) {
    throw DimensionError("teleport: the channel must have one connection with equal input and output dimension");
  }
  const std::size_t d = ch.in_dim();
  const DensityOperator resource = reference_output(ch);
  const std::size_t dims[] = {d};
  return {kExitOk, write_channel(teleport_channel(resource), ConnectionGraph::diagonal(dims)), ""};
}

}  // namespace qbc::cli
