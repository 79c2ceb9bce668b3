// kadapt: generate instances, run the greedy policy-count solver, print
// bound reports, dump recourse-stable region arrangements, run sweeps.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kadapt/arrangement.hpp"
#include "kadapt/bounds.hpp"
#include "kadapt/errors.hpp"
#include "kadapt/generators.hpp"
#include "kadapt/greedy.hpp"
#include "kadapt/instance.hpp"
#include "kadapt/json_io.hpp"
#include "kadapt/rng.hpp"
#include "kadapt/scenario_oracle.hpp"

namespace {

using nlohmann::json;
using namespace kadapt;

std::string fmt_rat(const Rat& r, bool as_float) {
  if (!as_float) return rat_to_string(r);
  std::ostringstream os;
  os << std::setprecision(12) << mpq_get_d(r.get_mpq_t());
  return os.str();
}

std::string fmt_vec(const std::vector<long long>& y) {
  std::string s = "(";
  for (size_t i = 0; i < y.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(y[i]);
  }
  return s + ")";
}

void write_text(const std::string& path, const std::string& body) {
  if (path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << body;
}

void emit_instance(const Instance& inst, const std::string& out_path,
                   const std::string& summary) {
  if (out_path.empty()) {
    std::cout << to_json(inst).dump(2) << "\n";
    return;
  }
  save_instance(inst, out_path);
  std::cout << summary << " -> " << out_path << "\n";
}

std::vector<long long> parse_values(const std::string& text) {
  std::vector<long long> vals;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);

  bool extend = false;  // "a,b,...,c" arithmetic progression marker
  for (const std::string& p : parts) {
    if (p.empty()) continue;
    if (p == "...") {
      if (vals.size() < 2) throw std::invalid_argument("'...' needs two leading values");
      extend = true;
      continue;
    }
    auto dots = p.find("..");
    if (dots != std::string::npos) {
      long long a = std::stoll(p.substr(0, dots));
      long long b = std::stoll(p.substr(dots + 2));
      for (long long v = a; v <= b; ++v) vals.push_back(v);
      continue;
    }
    long long v = std::stoll(p);
    if (extend) {
      long long step = vals[vals.size() - 1] - vals[vals.size() - 2];
      if (step <= 0) throw std::invalid_argument("'...' needs an increasing prefix");
      for (long long w = vals.back() + step; w < v; w += step) vals.push_back(w);
    }
    extend = false;
    vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.empty()) throw std::invalid_argument("empty value list");
  return vals;
}

const FiniteInstance& as_finite(const Instance& inst, const char* cmd) {
  if (const auto* f = std::get_if<FiniteInstance>(&inst)) return *f;
  throw std::invalid_argument(std::string(cmd) + " requires a finite instance");
}

const AffineInstance& as_affine(const Instance& inst, const char* cmd) {
  if (const auto* a = std::get_if<AffineInstance>(&inst)) return *a;
  throw std::invalid_argument(std::string(cmd) + " requires an affine instance");
}

// ---- solve ----

struct SolveArgs {
  std::string file;
  bool oracle = false;
  bool as_json = false;
  bool as_float = false;
};

void run_solve(const SolveArgs& a) {
  const Instance loaded = load_instance(a.file);
  const FiniteInstance& inst = as_finite(loaded, "solve");
  MinKResult res = greedy_min_k(inst);

  int k_opt = -1;
  std::string oracle_note;
  if (a.oracle) {
    try {
      k_opt = brute_force_min_k(inst).k_opt;
    } catch (const GuardExceeded& e) {
      oracle_note = e.what();
    }
  }

  if (a.as_json) {
    json out{{"schema_version", 1},
             {"instance", inst.name},
             {"t", inst.t()},
             {"n_y", inst.n_y},
             {"v_star", rat_to_json(res.optimal_value)},
             {"k_lb", res.k_lb},
             {"k_ub", res.k_ub},
             {"guarantee_ratio", guarantee_ratio(inst.t())}};
    out["policies"] = json::array();
    for (const auto& y : res.policies) out["policies"].push_back(y);
    out["trace"] = json::array();
    for (const auto& step : res.trace)
      out["trace"].push_back({{"policy", step.policy}, {"newly_covered", step.newly_covered}});
    if (a.oracle) out["k_opt"] = k_opt >= 0 ? json(k_opt) : json(nullptr);
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::cout << "v*=" << fmt_rat(res.optimal_value, a.as_float) << " k_lb=" << res.k_lb
            << " k_ub=" << res.k_ub;
  if (k_opt >= 0) std::cout << " k_opt=" << k_opt;
  std::cout << "\n";
  if (!oracle_note.empty()) std::cout << "oracle skipped: " << oracle_note << "\n";
  std::cout << "policies:\n";
  for (const auto& y : res.policies) std::cout << "  " << fmt_vec(y) << "\n";
  std::cout << "trace:\n";
  for (size_t i = 0; i < res.trace.size(); ++i)
    std::cout << "  " << (i + 1) << ": policy=" << fmt_vec(res.trace[i].policy)
              << " newly_covered=" << res.trace[i].newly_covered << "\n";
}

// ---- bounds ----

void print_report(const BoundReport& rep, bool as_json) {
  if (as_json) {
    json j = to_json(rep);
    j["schema_version"] = 1;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << rep.name << ": k = " << rep.value.get_str() << "\n";
  for (const auto& s : rep.assumptions) std::cout << "  assumes: " << s << "\n";
  for (const auto& [key, val] : rep.formula_trace)
    std::cout << "  " << key << " = " << val << "\n";
}

// ---- regions ----

struct RegionsArgs {
  std::string file;
  int x_index = 0;
  std::string json_path;
  std::string csv_path;
  bool cross_check = false;
  bool stability = false;
};

void run_regions(const RegionsArgs& a) {
  const Instance loaded = load_instance(a.file);
  const AffineInstance& inst = as_affine(loaded, "regions");
  if (a.x_index < 0 || a.x_index >= static_cast<int>(inst.X.size()))
    throw std::invalid_argument("--x out of range");
  const std::vector<long long>& x = inst.X[a.x_index];

  auto planes = hyperplanes_for(inst, x);
  auto regions = enumerate_regions(planes, inst.u_box);
  for (auto& r : regions)
    r.feasible_set = feasible_set_on_region(inst, x, r, planes, a.cross_check);

  const Int eta_int = eta_integer_x(inst);
  const Int eta_mix = eta_mixed_x(inst);
  const Int eta = std::min(eta_int, eta_mix);
  bool fixed = true;
  for (const auto& bi : inst.Bi)
    for (const auto& row : bi)
      for (long long v : row)
        if (v != 0) fixed = false;
  const int exponent = fixed ? omega(inst) : inst.n_xi;
  const Int r_bound = region_count_bound(eta, exponent);

  std::cout << "x = " << fmt_vec(x) << "\n"
            << "planes (empirical eta) = " << planes.size() << "\n"
            << "regions (empirical R)  = " << regions.size() << "\n"
            << "eta bound (integer)    = " << eta_int.get_str() << "\n"
            << "eta bound (mixed)      = " << eta_mix.get_str() << "\n"
            << "R bound                = " << r_bound.get_str()
            << (fixed ? "  (fixed recourse, exponent " : "  (exponent ")
            << exponent << ")\n";
  if (a.stability) {
    bool all = true;
    for (const auto& r : regions)
      if (!verify_recourse_stability(inst, x, r, planes)) {
        all = false;
        std::cout << "region " << r.signs << ": NOT recourse-stable\n";
      }
    std::cout << "recourse stability: " << (all ? "all regions stable" : "FAILED") << "\n";
  }

  if (!a.json_path.empty()) {
    json out{{"schema_version", 1},
             {"instance", inst.name},
             {"x", x},
             {"eta_empirical", planes.size()},
             {"r_empirical", regions.size()},
             {"eta_bound_integer", rat_to_json(Rat(eta_int))},
             {"eta_bound_mixed", rat_to_json(Rat(eta_mix))},
             {"r_bound", rat_to_json(Rat(r_bound))}};
    out["regions"] = json::array();
    for (const auto& r : regions) {
      json w = json::array();
      for (const auto& v : r.witness) w.push_back(rat_to_json(v));
      out["regions"].push_back(
          {{"signs", r.signs}, {"witness", w}, {"feasible_set", r.feasible_set}});
    }
    write_text(a.json_path, out.dump(2) + "\n");
  }
  if (!a.csv_path.empty()) {
    std::ostringstream csv;
    csv << "region,signs,witness,feasible_set\n";
    for (size_t i = 0; i < regions.size(); ++i) {
      csv << i << "," << regions[i].signs << ",";
      for (size_t j = 0; j < regions[i].witness.size(); ++j)
        csv << (j ? ";" : "") << rat_to_string(regions[i].witness[j]);
      csv << ",";
      for (size_t j = 0; j < regions[i].feasible_set.size(); ++j) {
        if (j) csv << ";";
        csv << "(";
        for (size_t l = 0; l < regions[i].feasible_set[j].size(); ++l)
          csv << (l ? " " : "") << regions[i].feasible_set[j][l];
        csv << ")";
      }
      csv << "\n";
    }
    write_text(a.csv_path, csv.str());
  }
}

// ---- sweep ----

struct SweepArgs {
  std::string var;
  std::string values;
  int n = 20;
  int t = 100;
  int reps = 5;
  uint64_t seed = 1;
  std::string out;
  int parallel = 1;
  bool as_float = false;
};

void run_sweep(const SweepArgs& a) {
  const auto values = parse_values(a.values);
  if (a.reps < 1) throw std::invalid_argument("--reps must be positive");

  struct Run {
    long long value;
    int rep;
    uint64_t seed;
    std::string row;
  };
  std::vector<Run> runs;
  for (long long v : values)
    for (int rep = 0; rep < a.reps; ++rep)
      runs.push_back({v, rep,
                      mix_seed(a.seed, (static_cast<uint64_t>(v) << 20) |
                                           static_cast<uint64_t>(rep)),
                      {}});

  auto work = [&](Run& run) {
    const int n_y = a.var == "t" ? a.n : static_cast<int>(run.value);
    const int t = a.var == "t" ? static_cast<int>(run.value) : a.t;
    FiniteInstance inst = generate_knapsack(n_y, t, run.seed);
    const auto start = std::chrono::steady_clock::now();
    MinKResult res = greedy_min_k(inst);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::ostringstream row;
    row << a.var << "," << run.value << "," << run.rep << "," << run.seed << ","
        << fmt_rat(res.optimal_value, a.as_float) << "," << res.k_lb << ","
        << res.k_ub << "," << ms << "," << std::setprecision(10)
        << guarantee_ratio(t) << "\n";
    run.row = row.str();
  };

  const int workers = std::min<int>(std::max(a.parallel, 1),
                                    static_cast<int>(runs.size()));
  if (workers <= 1) {
    for (Run& run : runs) work(run);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < runs.size(); i = next++) work(runs[i]);
      });
    for (auto& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "sweep_var,value,rep,seed,v_star,k_lb,k_ub,runtime_ms,guarantee_bound\n";
  for (const Run& run : runs) csv << run.row;
  write_text(a.out.empty() ? "-" : a.out, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"policy-count toolkit for two-stage robust integer programs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write an instance JSON file");
  gen->require_subcommand(1);
  struct {
    int n = 10, t = 10;
    uint64_t seed = 1;
    std::string out;
  } gk;
  auto* gen_knap = gen->add_subcommand("knapsack", "seeded covering-knapsack family");
  gen_knap->add_option("--n", gk.n, "items / second-stage dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_knap->add_option("--t", gk.t, "scenario count")->required()->check(CLI::PositiveNumber);
  gen_knap->add_option("--seed", gk.seed, "RNG seed");
  gen_knap->add_option("-o,--output", gk.out, "output path (default: stdout)");
  gen_knap->callback([&] {
    FiniteInstance inst = generate_knapsack(gk.n, gk.t, gk.seed);
    std::ostringstream sum;
    sum << "knapsack: n_y=" << gk.n << " t=" << gk.t << " seed=" << gk.seed
        << " Gamma=" << gk.n / 4
        << " b=" << rat_to_string(inst.scenarios[0].constraints[0].rhs);
    emit_instance(inst, gk.out, sum.str());
  });

  struct {
    int universe = 0;
    std::string subsets, out;
  } gs;
  auto* gen_sc = gen->add_subcommand("setcover", "set-cover reduction instance");
  gen_sc->add_option("--universe", gs.universe, "universe size")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_sc->add_option("--subsets", gs.subsets, "JSON file: list of 1-based element lists")
      ->required();
  gen_sc->add_option("-o,--output", gs.out, "output path (default: stdout)");
  gen_sc->callback([&] {
    std::ifstream in(gs.subsets);
    if (!in) throw std::invalid_argument("cannot read " + gs.subsets);
    json j = json::parse(in);
    std::vector<std::vector<int>> subsets;
    for (const auto& s : j) subsets.push_back(s.get<std::vector<int>>());
    FiniteInstance inst = reduce_set_cover(gs.universe, subsets);
    std::ostringstream sum;
    sum << "set-cover: universe=" << gs.universe << " subsets=" << subsets.size();
    emit_instance(inst, gs.out, sum.str());
  });

  struct {
    std::string name, out;
    int n = -1;
  } gb;
  auto* gen_b = gen->add_subcommand("builtin", "named study instance");
  gen_b->add_option("--name", gb.name, "simplex-units | recourse-regions | cardinality-band | cardinality-band-affine")
      ->required();
  gen_b->add_option("--n", gb.n, "arity for parameterized names");
  gen_b->add_option("-o,--output", gb.out, "output path (default: stdout)");
  gen_b->callback([&] {
    std::string name = gb.name;
    if (gb.n >= 0 && name.find('(') == std::string::npos)
      name += "(" + std::to_string(gb.n) + ")";
    Instance inst = builtin_example(name);
    std::ostringstream sum;
    if (const auto* f = std::get_if<FiniteInstance>(&inst))
      sum << f->name << ": t=" << f->t() << " n_y=" << f->n_y;
    else
      sum << std::get<AffineInstance>(inst).name << ": affine";
    emit_instance(inst, gb.out, sum.str());
  });

  // solve
  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "greedy k bounds for a finite instance");
  solve->add_option("file", sa.file, "instance JSON")->required();
  solve->add_flag("--oracle", sa.oracle, "also run the exact brute-force k");
  solve->add_flag("--json", sa.as_json, "JSON report");
  solve->add_flag("--float", sa.as_float, "decimal rendering of rationals");
  solve->callback([&] { run_solve(sa); });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form policy-count bounds");
  bounds->require_subcommand(1);

  struct {
    int nxi = 1;
  } bo;
  auto* b_obj = bounds->add_subcommand("objective", "objective-uncertainty bound");
  b_obj->add_option("--nxi", bo.nxi, "uncertainty dimension")->required()->check(CLI::PositiveNumber);
  b_obj->callback([&] { std::cout << "k = " << objective_bound(bo.nxi) << "\n"; });

  struct {
    double L = 1, diam = 1;
    long long s = 1, k = 1;
  } bg;
  auto* b_gap = bounds->add_subcommand("gap", "objective-uncertainty gap guarantee");
  b_gap->add_option("--L", bg.L, "Lipschitz constant")->required();
  b_gap->add_option("--diam", bg.diam, "diameter of Y")->required();
  b_gap->add_option("--s", bg.s, "smaller policy count")->required();
  b_gap->add_option("--k", bg.k, "larger policy count")->required();
  b_gap->callback([&] {
    std::cout << "gap <= " << std::setprecision(10) << approx_gap(bg.L, bg.diam, bg.s, bg.k)
              << "\n";
  });

  struct {
    double L = 1, diam = 1, alpha = 0;
    int nxi = 1;
  } bp;
  auto* b_pol = bounds->add_subcommand("policies", "policies for a target gap alpha");
  b_pol->add_option("--L", bp.L, "Lipschitz constant")->required();
  b_pol->add_option("--diam", bp.diam, "diameter of Y")->required();
  b_pol->add_option("--nxi", bp.nxi, "uncertainty dimension")->required()->check(CLI::PositiveNumber);
  b_pol->add_option("--alpha", bp.alpha, "allowed gap")->required();
  b_pol->callback([&] {
    std::cout << "k = " << policies_for_alpha(bp.L, bp.diam, bp.nxi, bp.alpha) << "\n";
  });

  struct {
    double L = 1, diam = 1;
    int nxi = 1;
    long long s = 1;
  } bc;
  auto* b_cgap = bounds->add_subcommand("cgap", "constraint-uncertainty gap guarantee");
  b_cgap->add_option("--L", bc.L, "Lipschitz constant")->required();
  b_cgap->add_option("--diam", bc.diam, "diameter of Y")->required();
  b_cgap->add_option("--nxi", bc.nxi, "uncertainty dimension")->required()->check(CLI::PositiveNumber);
  b_cgap->add_option("--s", bc.s, "regions multiplier s")->required();
  b_cgap->callback([&] {
    std::cout << "gap <= " << std::setprecision(10)
              << constraint_approx_gap(bc.L, bc.diam, bc.nxi, bc.s) << "\n";
  });

  struct {
    std::string file;
    bool fixed = false, obj_certain = false, obj_uncertain = false, as_json = false;
  } bk;
  auto* b_con = bounds->add_subcommand("constraint", "constraint-uncertainty bound report");
  b_con->add_option("file", bk.file, "affine instance JSON")->required();
  b_con->add_flag("--fixed-recourse", bk.fixed, "assert B(xi) constant in xi");
  b_con->add_flag("--obj-certain", bk.obj_certain, "treat the objective as xi-free");
  b_con->add_flag("--obj-uncertain", bk.obj_uncertain, "treat the objective as xi-dependent");
  b_con->add_flag("--json", bk.as_json, "JSON report");
  b_con->callback([&] {
    const Instance loaded = load_instance(bk.file);
    const AffineInstance& inst = as_affine(loaded, "bounds constraint");
    bool obj_unc = inst.objective.depends_on_xi();
    if (bk.obj_certain) obj_unc = false;
    if (bk.obj_uncertain) obj_unc = true;
    print_report(constraint_k_bound(inst, bk.fixed, obj_unc), bk.as_json);
  });

  // regions
  RegionsArgs ra;
  auto* regions = app.add_subcommand("regions", "recourse-stable region arrangement");
  regions->add_option("file", ra.file, "affine instance JSON")->required();
  regions->add_option("--x", ra.x_index, "index into the first-stage list X");
  regions->add_option("--json", ra.json_path, "write region dump JSON ('-' = stdout)");
  regions->add_option("--csv", ra.csv_path, "write region dump CSV ('-' = stdout)");
  regions->add_flag("--cross-check", ra.cross_check, "revalidate feasible sets at sampled points");
  regions->add_flag("--stability", ra.stability, "verify recourse stability per region");
  regions->callback([&] { run_regions(ra); });

  // sweep
  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "seeded knapsack experiment CSV");
  sweep->add_option("--var", wa.var, "sweep variable")
      ->required()
      ->check(CLI::IsMember({"t", "n"}));
  sweep->add_option("--values", wa.values, "e.g. 20,40,...,100 or 10..20")->required();
  sweep->add_option("--n", wa.n, "fixed n_y (when --var t)");
  sweep->add_option("--t", wa.t, "fixed t (when --var n)");
  sweep->add_option("--reps", wa.reps, "repetitions per value");
  sweep->add_option("--seed", wa.seed, "base seed");
  sweep->add_option("-o,--output", wa.out, "output CSV path (default: stdout)");
  sweep->add_option("--parallel", wa.parallel, "worker threads");
  sweep->add_flag("--float", wa.as_float, "decimal rendering of rationals");
  sweep->callback([&] { run_sweep(wa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const TwoStageInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UncoverableScenarios& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
