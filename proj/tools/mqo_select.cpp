// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mqo_select: generate instances, solve them, and benchmark algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mqo/mqo.hpp"
#include "mqo_oracle/oracle.hpp"

namespace {

using mqo::io::Json;

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kResourceCap = 3, kInvariant = 4 };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw mqo::InvalidArgumentError("cannot read " + what + " from '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_double(part, what));
  return out;
}

// "v=6,10,12 w=1,2,3 W=5"
mqo::KnapsackInstance parse_knapsack(const std::vector<std::string>& args) {
  mqo::KnapsackInstance k;
  bool have_v = false, have_w = false, have_cap = false;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw mqo::InvalidArgumentError("knapsack argument '" + a +
                                      "' is not key=value");
    const std::string key = a.substr(0, eq), val = a.substr(eq + 1);
    if (key == "v") {
      k.values = parse_list(val, "values");
      have_v = true;
    } else if (key == "w") {
      k.weights = parse_list(val, "weights");
      have_w = true;
    } else if (key == "W") {
      k.capacity = parse_double(val, "capacity");
      have_cap = true;
    } else {
      throw mqo::InvalidArgumentError("unknown knapsack key '" + key + "'");
    }
  }
  if (!have_v || !have_w || !have_cap)
    throw mqo::InvalidArgumentError("knapsack needs v=..., w=... and W=...");
  return k;
}

void print_summary(const mqo::CspInstance& inst, std::ostream& out) {
  const auto& f = inst.forest();
  out << "eq_nodes " << f.eq_count() << "\n"
      << "op_nodes " << f.op_count() << "\n"
      << "roots " << f.roots().size() << "\n"
      << "candidates " << inst.candidates().size() << "\n";
  for (mqo::NodeId c : inst.candidates())
    out << "candidate " << f.eq(c).label << " id=" << c
        << " size=" << mqo::io::format_number(f.eq(c).size)
        << " unit_benefit=" << mqo::io::format_number(inst.costs().unit_benefit[c])
        << "\n";
}

struct GenArgs {
  std::string fixture;
  bool random = false;
  std::vector<std::string> knapsack;
  std::size_t nodes = 12;
  double or_prob = 0.0;
  std::uint64_t seed = 0;
  std::size_t component_size = 0;
  double budget_fraction = 0.3;
  double eps = 0.0, eps1 = 0.0, eps2 = 0.0;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  const int sources = !a.fixture.empty() + a.random + !a.knapsack.empty();
  if (sources != 1)
    throw mqo::InvalidArgumentError(
        "gen needs exactly one of --fixture, --random, --knapsack");
  mqo::CspInstance inst;
  Json prov;
  if (!a.fixture.empty()) {
    mqo::FixtureParams p;
    p.eps = a.eps;
    p.eps1 = a.eps1;
    p.eps2 = a.eps2;
    inst = mqo::fixture(a.fixture, p);
    prov["generator"] = "fixture";
    prov["seed"] = 0;
    prov["params"] = {{"name", a.fixture}, {"eps", a.eps}, {"eps1", a.eps1},
                      {"eps2", a.eps2}};
  } else if (a.random) {
    mqo::GeneratorConfig g;
    g.nodes_min = g.nodes_max = a.nodes;
    g.or_prob = a.or_prob;
    g.seed = a.seed;
    g.component_size = a.component_size;
    g.budget_fraction = a.budget_fraction;
    inst = mqo::random_forest(g);
    prov["generator"] = "random_forest";
    prov["seed"] = a.seed;
    prov["params"] = {{"nodes", a.nodes},
                      {"fan_in", {g.fan_in_min, g.fan_in_max}},
                      {"or_prob", a.or_prob},
                      {"leaf_fraction", g.leaf_fraction},
                      {"size", {g.size_min, g.size_max}},
                      {"cost", {g.cost_min, g.cost_max}},
                      {"component_size", a.component_size},
                      {"budget_fraction", a.budget_fraction}};
  } else {
    const auto k = parse_knapsack(a.knapsack);
    auto red = mqo::knapsack_reduction(k);
    inst = std::move(red.instance);
    prov["generator"] = "knapsack_reduction";
    prov["seed"] = 0;
    prov["params"] = {{"values", k.values}, {"weights", k.weights},
                      {"capacity", k.capacity}, {"scale", red.scale}};
  }
  const std::string text = mqo::io::instance_text(inst, prov);
  if (a.output.empty()) {
    std::cout << text;
    print_summary(inst, std::cerr);
  } else {
    mqo::io::write_text(a.output, text);
    print_summary(inst, std::cout);
  }
  return kOk;
}

struct SolveArgs {
  std::string input;
  std::string algo;
  std::optional<double> budget;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string params;
  std::string expense;
  std::optional<double> delta, rho, penalty_r;
  bool level_order = false;
  std::string output;
  std::string format = "json";
};

void apply_overrides(mqo::CspInstance& inst, const std::optional<double>& budget,
                     const std::string& expense, const std::optional<double>& delta,
                     const std::optional<double>& rho,
                     const std::optional<double>& penalty_r) {
  mqo::Budget b = inst.budget();
  if (budget) {
    if (!(*budget >= 0.0))
      throw mqo::InvalidArgumentError("--budget must be >= 0");
    b.limit = *budget;
  }
  if (penalty_r) b.penalty_r = *penalty_r;
  inst.set_budget(b);
  mqo::ExpenseModel m = inst.expense_model();
  if (!expense.empty()) m.kind = mqo::parse_expense_kind(expense);
  if (delta) m.delta = *delta;
  if (rho) m.rho = *rho;
  inst.set_expense_model(m);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mqo::InvalidArgumentError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw mqo::MalformedInputError(path + ": invalid JSON: " + e.what());
  }
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw mqo::ConfigurationError(what + ": invalid JSON: " + e.what());
  }
}

int cmd_solve(const SolveArgs& a) {
  auto file = mqo::io::read_instance(a.input);
  mqo::CspInstance inst = std::move(file.instance);
  apply_overrides(inst, a.budget, a.expense, a.delta, a.rho, a.penalty_r);

  mqo::AlgorithmConfig cfg;
  if (!a.config.empty()) cfg = mqo::parse_algorithm_config(read_json_file(a.config));
  if (!a.algo.empty()) cfg.algo = a.algo;
  if (cfg.algo.empty()) throw mqo::ConfigurationError("no algorithm given (--algo)");
  if (!a.params.empty()) cfg.params = parse_json_text(a.params, "--params");
  if (a.level_order) cfg.level_order = true;
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (a.config.empty()) {
    std::cerr << "warning: no --seed given, using 0\n";
  }

  const auto report = mqo::run_algorithm(inst, cfg, mqo::configured_threads());
  mqo::verify_report(inst, report);
  std::string text;
  if (a.format == "json") {
    text = mqo::io::report_json(inst, report).dump(2) + "\n";
  } else if (a.format == "csv") {
    text = std::string(mqo::io::kReportCsvHeader) + "\n" +
           mqo::io::report_csv_row(inst, report) + "\n";
  } else {
    throw mqo::InvalidArgumentError("unknown format '" + a.format + "'");
  }
  if (a.output.empty()) std::cout << text;
  else mqo::io::write_text(a.output, text);
  return report.feasible ? kOk : kInfeasible;
}

struct BenchArgs {
  std::vector<std::string> instances;
  std::vector<std::string> algos;
  std::vector<std::uint64_t> seeds;
  std::optional<double> budget;
  std::string algo_config;
  bool oracle = false;
  bool scaling = false;
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::string output;
};

mqo::CspInstance load_bench_instance(const std::string& spec) {
  if (spec.rfind("fixture:", 0) == 0) return mqo::fixture(spec.substr(8));
  if (spec.rfind("random:", 0) == 0) {
    const auto parts = split(spec.substr(7), ':');
    if (parts.empty() || parts.size() > 2)
      throw mqo::InvalidArgumentError("expected random:SEED[:NODES], got '" +
                                      spec + "'");
    mqo::GeneratorConfig g;
    g.seed = static_cast<std::uint64_t>(parse_double(parts[0], "seed"));
    if (parts.size() == 2)
      g.nodes_min = g.nodes_max =
          static_cast<std::size_t>(parse_double(parts[1], "node count"));
    return mqo::random_forest(g);
  }
  return mqo::io::read_instance(spec).instance;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_bench_scaling(const BenchArgs& a, std::ostream& out) {
  out << "nodes,seed,eq_nodes,stats_visits,elapsed_ns\n";
  std::vector<double> xs, ys;
  for (std::size_t size : a.sizes)
    for (std::uint64_t seed : a.seeds) {
      mqo::GeneratorConfig g;
      g.nodes_min = g.nodes_max = size;
      g.component_size = 50;
      g.fan_in_max = 3;
      g.seed = seed;
      const auto inst = mqo::random_forest(g);
      const auto r = mqo::iterative_flip(inst, 1, seed);
      const auto visits = r.counters.at("stats_visits");
      out << size << "," << seed << "," << inst.forest().eq_count() << ","
          << visits << "," << r.elapsed_ns << "\n";
      xs.push_back(static_cast<double>(inst.forest().eq_count()));
      ys.push_back(static_cast<double>(visits));
    }
  if (xs.size() >= 2)
    std::cerr << "log-log slope of stats visits vs nodes: "
              << mqo::io::format_number(loglog_slope(xs, ys)) << "\n";
  return kOk;
}

int cmd_bench(const BenchArgs& a) {
  if (a.seeds.empty())
    throw mqo::InvalidArgumentError("bench requires --seeds");
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary);
    if (!file) throw mqo::InvalidArgumentError("cannot write '" + a.output + "'");
  }
  std::ostream& out = a.output.empty() ? std::cout : file;
  if (a.scaling) return cmd_bench_scaling(a, out);
  if (a.instances.empty() || a.algos.empty())
    throw mqo::InvalidArgumentError("bench requires --instances and --algos");

  Json per_algo = Json::object();
  if (!a.algo_config.empty()) per_algo = read_json_file(a.algo_config);

  std::vector<std::string> names = a.instances;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<std::string> algos = a.algos;
  std::sort(algos.begin(), algos.end());
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
  std::vector<std::uint64_t> seeds = a.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<mqo::CspInstance> insts;
  std::vector<std::optional<double>> optimum(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    insts.push_back(load_bench_instance(names[i]));
    apply_overrides(insts.back(), a.budget, "", {}, {}, {});
    if (a.oracle) optimum[i] = mqo::oracle::brute_force_select(insts.back(), 12).optimum;
  }

  struct Cell {
    std::size_t inst;
    std::string algo;
    std::uint64_t seed;
    mqo::AlgorithmReport report;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (const auto& algo : algos)
      for (std::uint64_t seed : seeds) cells.push_back({i, algo, seed, {}});
  mqo::parallel_for(cells.size(), mqo::configured_threads(), [&](std::size_t k) {
    Cell& c = cells[k];
    mqo::AlgorithmConfig cfg;
    cfg.algo = c.algo;
    cfg.seed = c.seed;
    if (per_algo.contains(c.algo)) cfg.params = per_algo[c.algo];
    c.report = mqo::run_algorithm(insts[c.inst], cfg, 1);
    mqo::verify_report(insts[c.inst], c.report);
  });

  out << "instance,algo,seed,benefit,expense,feasible,iterations,elapsed_ns";
  if (a.oracle) out << ",optimum,ratio";
  out << "\n";
  for (const Cell& c : cells) {
    const auto& r = c.report;
    out << csv_field(names[c.inst]) << "," << c.algo << "," << c.seed << ","
        << mqo::io::format_number(r.benefit) << ","
        << mqo::io::format_number(r.expense) << "," << (r.feasible ? 1 : 0)
        << "," << r.iterations << "," << r.elapsed_ns;
    if (a.oracle) {
      const double opt = *optimum[c.inst];
      const double ratio = opt > 0.0 ? r.benefit / opt : 1.0;
      out << "," << mqo::io::format_number(opt) << ","
          << mqo::io::format_number(ratio);
    }
    out << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Candidate selection for multi-query optimization"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write an instance file");
  g->add_option("--fixture", gen.fixture, "Built-in fixture name");
  g->add_flag("--random", gen.random, "Random expression forest");
  g->add_option("--knapsack", gen.knapsack, "Knapsack items: v=... w=... W=...")
      ->expected(3);
  g->add_option("--nodes", gen.nodes, "Eq-node count for --random");
  g->add_option("--or-prob", gen.or_prob, "Chance of an alternative producer");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--component-size", gen.component_size,
                "Split the random forest into blocks of this many nodes");
  g->add_option("--budget-fraction", gen.budget_fraction,
                "Budget as a share of all candidate sizes");
  g->add_option("--eps", gen.eps, "fig2 aggregation cost");
  g->add_option("--eps1", gen.eps1, "fig4 first aggregation surcharge");
  g->add_option("--eps2", gen.eps2, "fig4 second aggregation surcharge");
  g->add_option("-o,--output", gen.output, "Output file (default: stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one algorithm on an instance");
  s->add_option("-i,--input", solve.input, "Instance file")->required();
  s->add_option("--algo", solve.algo, "Algorithm name");
  s->add_option("--budget", solve.budget, "Expense budget");
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--config", solve.config, "Algorithm config file");
  s->add_option("--params", solve.params, "Algorithm parameters as JSON");
  s->add_option("--expense", solve.expense,
                "Expense model: static, maintenance, shared_storage");
  s->add_option("--delta", solve.delta, "Maintenance overhead per candidate");
  s->add_option("--rho", solve.rho, "Shared-storage overhead per candidate");
  s->add_option("--penalty-r", solve.penalty_r, "Budget overshoot penalty");
  s->add_flag("--level-order", solve.level_order,
              "Restrict candidates to the best level of each query");
  s->add_option("-o,--output", solve.output, "Report file (default: stdout)");
  s->add_option("--format", solve.format, "json or csv");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run algorithms over instances and seeds");
  b->add_option("--instances", bench.instances,
                "Instance files, fixture:NAME or random:SEED[:NODES]")
      ->delimiter(',');
  b->add_option("--algos", bench.algos, "Algorithm names")->delimiter(',');
  b->add_option("--seeds", bench.seeds, "Seeds")->delimiter(',');
  b->add_option("--budget", bench.budget, "Budget override");
  b->add_option("--algo-config", bench.algo_config,
                "JSON object mapping algorithm name to params");
  b->add_flag("--oracle", bench.oracle, "Add brute-force optimum and ratio");
  b->add_flag("--scaling", bench.scaling,
              "Measure stats-step node visits over growing forests");
  b->add_option("--sizes", bench.sizes, "Node counts for --scaling")
      ->delimiter(',');
  b->add_option("-o,--output", bench.output, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(solve);
    if (*b) return cmd_bench(bench);
  } catch (const mqo::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceCap;
  } catch (const mqo::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  } catch (const mqo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kInputError;
}
