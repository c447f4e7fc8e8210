#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qsd/evaluator.hpp"
#include "qsd/optimizer.hpp"
#include "qsd/policy_table.hpp"
#include "qsd/results_io.hpp"
#include "qsd/simulator.hpp"
#include "qsd/svg_plot.hpp"

namespace {

using namespace qsd;

constexpr const char* kAllSchemes[] = {"unbiased", "fully-biased",
                                       "locally-optimal", "globally-optimal",
                                       "collective"};

struct Config {
  double theta_deg = 15.0;
  double q_plus = 0.5;
  double nu = 0.0;
  int n_max = 10;
  int grid = 2501;
  std::int64_t trials = 2000;
  std::uint64_t seed = 1;
  std::vector<std::string> schemes;
  std::vector<double> nu_list;
  std::string out;
};

DiscriminationProblem make_problem(const Config& cfg, double nu) {
  if (!(cfg.theta_deg > 0.0 && cfg.theta_deg < 45.0))
    throw CLI::ValidationError("--theta-deg must lie in (0, 45)");
  if (!(cfg.q_plus >= 0.5 && cfg.q_plus <= 1.0))
    throw CLI::ValidationError("--q-plus must lie in [0.5, 1]");
  if (!(nu >= 0.0 && nu <= 1.0))
    throw CLI::ValidationError("--nu must lie in [0, 1]");
  return DiscriminationProblem(cfg.theta_deg * kPi / 180.0, cfg.q_plus, nu);
}

std::vector<std::string> resolve_schemes(const Config& cfg,
                                         bool allow_collective) {
  std::vector<std::string> names = cfg.schemes;
  if (names.empty()) {
    names.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
    if (!allow_collective) names.pop_back();
  }
  for (const std::string& s : names) {
    const bool known =
        std::find(std::begin(kAllSchemes), std::end(kAllSchemes), s) !=
        std::end(kAllSchemes);
    if (!known) throw CLI::ValidationError("--schemes: unknown scheme " + s);
    if (!allow_collective && s == "collective")
      throw CLI::ValidationError(
          "--schemes: collective cannot be simulated (benchmark only)");
  }
  return names;
}

SchemeKind kind_from_name(const std::string& name) {
  if (name == "unbiased") return SchemeKind::Unbiased;
  if (name == "fully-biased") return SchemeKind::FullyBiased;
  if (name == "locally-optimal") return SchemeKind::LocallyOptimal;
  if (name == "globally-optimal") return SchemeKind::GloballyOptimal;
  throw CLI::ValidationError("not a local scheme: " + name);
}

// One table build at the full horizon serves every shorter horizon: the
// backward recursion depends only on copies remaining.
std::shared_ptr<const PolicyTable> build_shared_table(
    const DiscriminationProblem& prob, int horizon, int grid) {
  return std::make_shared<PolicyTable>(build_table(prob, horizon, grid));
}

SchemeSpec spec_for(SchemeKind kind, int n,
                    const std::shared_ptr<const PolicyTable>& full_table) {
  if (kind != SchemeKind::GloballyOptimal) return SchemeSpec(kind, n);
  if (n == full_table->horizon) return SchemeSpec(kind, n, full_table);
  return SchemeSpec(kind, n,
                    std::make_shared<PolicyTable>(sub_horizon(*full_table, n)));
}

double scheme_cost(const DiscriminationProblem& prob, const std::string& name,
                   int n, const std::shared_ptr<const PolicyTable>& table) {
  if (name == "collective") return collective_cost(prob, n).cost;
  const SchemeKind kind = kind_from_name(name);
  return exact_cost(prob, spec_for(kind, n, table), n).cost;
}

int cmd_evaluate(const Config& cfg) {
  const DiscriminationProblem prob = make_problem(cfg, cfg.nu);
  const std::vector<std::string> names = resolve_schemes(cfg, true);
  const bool wants_collective =
      std::find(names.begin(), names.end(), "collective") != names.end();
  if (wants_collective && cfg.n_max > 12)
    throw CLI::ValidationError("--n-max: collective benchmark needs N <= 12");

  std::shared_ptr<const PolicyTable> table;
  if (std::find(names.begin(), names.end(), "globally-optimal") != names.end())
    table = build_shared_table(prob, cfg.n_max, cfg.grid);

  std::vector<ResultRow> rows;
  for (const std::string& name : names)
    for (int n = 1; n <= cfg.n_max; ++n)
      rows.push_back({name, n, cfg.theta_deg, cfg.q_plus, cfg.nu,
                      scheme_cost(prob, name, n, table)});
  write_results_csv(rows, cfg.out);
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
  return 0;
}

int cmd_table(const Config& cfg) {
  const DiscriminationProblem prob = make_problem(cfg, cfg.nu);
  const PolicyTable table = build_table(prob, cfg.n_max, cfg.grid);
  write_table_csv(table, cfg.out);
  std::cout << "wrote " << table.horizon << " x " << table.grid_size()
            << " policy table to " << cfg.out
            << " (expected error at prior: "
            << table.cost_at(prob.q_plus) << ")\n";
  return 0;
}

int cmd_simulate(const Config& cfg) {
  const DiscriminationProblem prob = make_problem(cfg, cfg.nu);
  if (cfg.trials < 1) throw CLI::ValidationError("--trials must be >= 1");
  const std::vector<std::string> names = resolve_schemes(cfg, false);

  std::shared_ptr<const PolicyTable> table;
  if (std::find(names.begin(), names.end(), "globally-optimal") != names.end())
    table = build_shared_table(prob, cfg.n_max, cfg.grid);

  std::vector<BatchRow> rows;
  for (size_t si = 0; si < names.size(); ++si) {
    const SchemeKind kind = kind_from_name(names[si]);
    for (int n = 1; n <= cfg.n_max; ++n) {
      const std::uint64_t batch_seed = cfg.seed * 1000003ull + si * 101ull + n;
      const BatchStats stats = run_batch(prob, spec_for(kind, n, table), n,
                                         cfg.trials, batch_seed);
      rows.push_back({names[si], n, cfg.theta_deg, cfg.q_plus, cfg.nu,
                      stats.trials, stats.errors, stats.error_rate,
                      stats.std_err, batch_seed});
    }
  }
  write_batch_csv(rows, cfg.out);
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
  return 0;
}

int cmd_sweep(const Config& cfg) {
  if (cfg.nu_list.empty())
    throw CLI::ValidationError("--nu-list is required for sweep");
  std::vector<double> nus = cfg.nu_list;
  std::sort(nus.begin(), nus.end());
  const std::vector<std::string> names = resolve_schemes(cfg, true);
  if (std::find(names.begin(), names.end(), "collective") != names.end() &&
      cfg.n_max > 12)
    throw CLI::ValidationError("--n-max: collective benchmark needs N <= 12");
  const int n = cfg.n_max;

  std::vector<ResultRow> rows;
  for (double nu : nus) {
    const DiscriminationProblem prob = make_problem(cfg, nu);
    std::shared_ptr<const PolicyTable> table;
    if (std::find(names.begin(), names.end(), "globally-optimal") !=
        names.end())
      table = build_shared_table(prob, n, cfg.grid);
    for (const std::string& name : names)
      rows.push_back({name, n, cfg.theta_deg, cfg.q_plus, nu,
                      scheme_cost(prob, name, n, table)});
  }
  write_results_csv(rows, cfg.out);

  // Locate the unbiased / locally-optimal crossing by bisection on nu.
  auto gap = [&](double nu) {
    const DiscriminationProblem prob = make_problem(cfg, nu);
    return exact_cost(prob, SchemeSpec(SchemeKind::Unbiased, n), n).cost -
           exact_cost(prob, SchemeSpec(SchemeKind::LocallyOptimal, n), n).cost;
  };
  double lo = 0.02, hi = 0.12;
  bool bracketed = gap(lo) * gap(hi) < 0.0;
  if (!bracketed) {
    for (size_t i = 0; i + 1 < nus.size(); ++i) {
      if (nus[i] <= 0.0) continue;
      if (gap(nus[i]) * gap(nus[i + 1]) < 0.0) {
        lo = nus[i];
        hi = nus[i + 1];
        bracketed = true;
        break;
      }
    }
  }
  if (bracketed) {
    while (hi - lo > 1e-4) {
      const double mid = 0.5 * (lo + hi);
      if (gap(lo) * gap(mid) <= 0.0)
        hi = mid;
      else
        lo = mid;
    }
    std::printf("# crossing: unbiased overtakes locally-optimal at nu* = "
                "%.4f (N = %d)\n",
                0.5 * (lo + hi), n);
  } else {
    std::printf("# crossing: no unbiased/locally-optimal sign change found\n");
  }
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
  return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out) {
  ParsedResults parsed;
  for (const std::string& path : inputs) read_results_csv(path, parsed);
  if (parsed.theory.empty() && parsed.batches.empty())
    throw std::runtime_error("no data rows in input");

  std::set<int> n_values;
  std::set<double> nu_values;
  for (const ResultRow& r : parsed.theory) {
    n_values.insert(r.n);
    nu_values.insert(r.nu);
  }
  for (const BatchRow& r : parsed.batches) {
    n_values.insert(r.n);
    nu_values.insert(r.nu);
  }
  const bool vs_nu = nu_values.size() > 1;
  if (vs_nu && n_values.size() > 1)
    throw std::runtime_error(
        "inputs vary in both N and nu; plot one sweep at a time");

  auto scheme_rank = [](const std::string& s) {
    const auto* it =
        std::find(std::begin(kAllSchemes), std::end(kAllSchemes), s);
    return static_cast<int>(it - std::begin(kAllSchemes));
  };

  PlotSpec plot;
  plot.x_label = vs_nu ? "noise strength" : "copies measured";
  std::map<std::pair<int, std::string>, PlotSeries> series;
  for (const ResultRow& r : parsed.theory) {
    PlotSeries& s = series[{scheme_rank(r.scheme), r.scheme}];
    s.label = r.scheme;
    s.line = true;
    s.points.push_back({vs_nu ? r.nu : r.n, r.cost, 0.0});
  }
  for (const BatchRow& r : parsed.batches) {
    PlotSeries& s = series[{scheme_rank(r.scheme), r.scheme + " (MC)"}];
    s.label = r.scheme + " (MC)";
    s.line = false;
    s.points.push_back({vs_nu ? r.nu : r.n, r.error_rate, r.std_err});
  }
  for (auto& [key, s] : series) {
    std::sort(s.points.begin(), s.points.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
    plot.series.push_back(std::move(s));
  }
  write_svg_plot(plot, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Minimum-error discrimination of two noisy qubit states from N copies: "
      "exact scheme costs, globally-optimal adaptive policy construction, "
      "and Monte Carlo simulation"};
  app.require_subcommand(1);

  Config cfg;
  std::vector<std::string> plot_inputs;
  std::string plot_out;

  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--theta-deg", cfg.theta_deg,
                    "state half-angle in degrees, in (0, 45)")
        ->capture_default_str();
    cmd->add_option("--q-plus", cfg.q_plus, "prior of psi+, in [0.5, 1]")
        ->capture_default_str();
    cmd->add_option("--nu", cfg.nu, "depolarizing strength, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--n-max", cfg.n_max, "maximum number of copies")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--grid", cfg.grid, "policy table belief samples")
        ->check(CLI::Range(3, 100000))
        ->capture_default_str();
    cmd->add_option("--schemes", cfg.schemes,
                    "comma-separated subset of: unbiased, fully-biased, "
                    "locally-optimal, globally-optimal, collective")
        ->delimiter(',');
  };

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "exact error probabilities vs N");
  add_problem_flags(evaluate);
  evaluate->add_option("--out", cfg.out, "output CSV path")->required();

  CLI::App* table =
      app.add_subcommand("table", "build and export the optimal policy table");
  add_problem_flags(table);
  table->add_option("--out", cfg.out, "output CSV path")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo batches vs N");
  add_problem_flags(simulate);
  simulate->add_option("--trials", cfg.trials, "trials per (scheme, N)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "base random seed")
      ->capture_default_str();
  simulate->add_option("--out", cfg.out, "output CSV path")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "exact costs over a list of noise strengths at fixed N");
  add_problem_flags(sweep);
  sweep->add_option("--nu-list", cfg.nu_list, "noise strengths to evaluate")
      ->delimiter(',')
      ->required();
  sweep->add_option("--out", cfg.out, "output CSV path")->required();

  CLI::App* plot = app.add_subcommand(
      "plot", "render results/batch CSV files as an SVG figure");
  plot->add_option("inputs", plot_inputs, "CSV files from evaluate/simulate/"
                                          "sweep")
      ->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(evaluate)) return cmd_evaluate(cfg);
    if (app.got_subcommand(table)) return cmd_table(cfg);
    if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
    if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
    if (app.got_subcommand(plot)) return cmd_plot(plot_inputs, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
