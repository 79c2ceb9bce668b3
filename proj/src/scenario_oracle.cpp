#include "kadapt/scenario_oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "kadapt/errors.hpp"
#include "scenario_table.hpp"

namespace kadapt {

namespace {

using detail::InstanceTable;
using detail::IntRow;
using detail::kEnumGuard;
using detail::ScenarioInts;

Rat rat_dot(const std::vector<Rat>& a, const std::vector<long long>& y) {
  Rat dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * rat_of(y[i]);
  return dot;
}

bool holds(const RatConstraint& c, const std::vector<long long>& y) {
  const Rat dot = rat_dot(c.row, y);
  return c.sense == Sense::Eq ? dot == c.rhs : dot >= c.rhs;
}

bool scenario_feasible(const Scenario& sc, const std::vector<long long>& y) {
  for (const auto& c : sc.constraints)
    if (!holds(c, y)) return false;
  return true;
}

// Minimizing DFS over the y box in lexicographic order; incumbent updates are
// strict improvements, so the final argmin is the lexicographically smallest.
class ScenarioSearch {
public:
  ScenarioSearch(const InstanceTable& tab, const ScenarioInts& sc) : tab_(tab), sc_(sc) {
    n_ = static_cast<int>(tab.lo.size());
    obj_sufmin_.assign(n_ + 1, 0);
    for (int i = n_ - 1; i >= 0; --i)
      obj_sufmin_[i] = obj_sufmin_[i + 1] +
                       std::min(sc.obj[i] * tab.lo[i], sc.obj[i] * tab.hi[i]);
    for (const auto& row : sc.rows) rows_.push_back(RowCtx(row, tab));
    for (const auto& row : tab.det_rows) rows_.push_back(RowCtx(row, tab));
    y_.assign(n_, 0);
  }

  ScenarioSolution run() {
    dfs(0);
    ScenarioSolution out;
    if (!have_best_) {
      out.value = Value::infinity();
      return out;
    }
    out.value = Value(Rat(int_of(best_)) / Rat(int_of(sc_.obj_scale)));
    out.argmin = best_y_;
    return out;
  }

private:
  struct RowCtx {
    RowCtx(const IntRow& r, const InstanceTable& tab) : row(&r) {
      const int n = static_cast<int>(tab.lo.size());
      sufmin.assign(n + 1, 0);
      sufmax.assign(n + 1, 0);
      for (int i = n - 1; i >= 0; --i) {
        sufmin[i] = sufmin[i + 1] + std::min(r.a[i] * tab.lo[i], r.a[i] * tab.hi[i]);
        sufmax[i] = sufmax[i + 1] + std::max(r.a[i] * tab.lo[i], r.a[i] * tab.hi[i]);
      }
    }
    const IntRow* row;
    std::vector<long long> sufmin, sufmax;
    long long partial = 0;
  };

  bool pruned(int i) const {
    if (have_best_ && obj_partial_ + obj_sufmin_[i] >= best_) return true;
    for (const auto& rc : rows_) {
      if (rc.partial + rc.sufmax[i] < rc.row->rhs) return true;
      if (rc.row->eq && rc.partial + rc.sufmin[i] > rc.row->rhs) return true;
    }
    return false;
  }

  void dfs(int i) {
    if (pruned(i)) return;
    if (i == n_) {
      best_ = obj_partial_;
      best_y_ = y_;
      have_best_ = true;
      return;
    }
    for (long long v = tab_.lo[i]; v <= tab_.hi[i]; ++v) {
      y_[i] = v;
      obj_partial_ += sc_.obj[i] * v;
      for (auto& rc : rows_) rc.partial += rc.row->a[i] * v;
      dfs(i + 1);
      obj_partial_ -= sc_.obj[i] * v;
      for (auto& rc : rows_) rc.partial -= rc.row->a[i] * v;
    }
  }

  const InstanceTable& tab_;
  const ScenarioInts& sc_;
  int n_ = 0;
  std::vector<long long> obj_sufmin_;
  std::vector<RowCtx> rows_;
  long long obj_partial_ = 0;
  std::vector<long long> y_, best_y_;
  long long best_ = 0;
  bool have_best_ = false;
};

// Enumeration fallback for explicit point lists and instances whose data does
// not fit the integer kernel.
ScenarioSolution solve_by_enumeration(const FiniteInstance& inst, int j) {
  const Scenario& sc = inst.scenarios[j];
  ScenarioSolution out;
  out.value = Value::infinity();
  inst.y_space.enumerate(kEnumGuard, [&](const std::vector<long long>& y) {
    if (!scenario_feasible(sc, y)) return;
    Value v(rat_dot(sc.objective, y));
    if (v < out.value || (v == out.value && y < out.argmin)) {
      out.value = v;
      out.argmin = y;
    }
  });
  return out;
}

}  // namespace

namespace detail {

ScenarioSolution solve_with_table(const FiniteInstance& inst, const InstanceTable& tab,
                                  int j) {
  if (!tab.valid) return solve_by_enumeration(inst, j);
  return ScenarioSearch(tab, tab.scenarios[j]).run();
}

}  // namespace detail

ScenarioSolution solve_scenario(const FiniteInstance& inst, int j) {
  if (j < 0 || j >= inst.t()) throw std::out_of_range("scenario index out of range");
  return detail::solve_with_table(inst, detail::build_table(inst), j);
}

Rat two_stage_value(const FiniteInstance& inst) {
  if (inst.t() == 0) throw std::invalid_argument("instance has no scenarios");
  const InstanceTable tab = detail::build_table(inst);
  Value best;
  bool first = true;
  for (int j = 0; j < inst.t(); ++j) {
    const ScenarioSolution sol = detail::solve_with_table(inst, tab, j);
    if (sol.value.is_infinite()) throw TwoStageInfeasible(j);
    if (first || sol.value > best) best = sol.value;
    first = false;
  }
  return best.finite();
}

CoverageSet coverage_set(const FiniteInstance& inst, const std::vector<long long>& y,
                         const Value& v) {
  if (!inst.y_space.contains(y))
    throw std::invalid_argument("coverage_set: y is not a member of Y");
  CoverageSet bits(inst.t());
  for (int j = 0; j < inst.t(); ++j) {
    const Scenario& sc = inst.scenarios[j];
    if (!scenario_feasible(sc, y)) continue;
    if (Value(rat_dot(sc.objective, y)) <= v) bits.set(j);
  }
  return bits;
}

Value evaluate_k_solution(const FiniteInstance& inst,
                          const std::vector<std::vector<long long>>& policies) {
  for (const auto& y : policies)
    if (!inst.y_space.contains(y))
      throw std::invalid_argument("evaluate_k_solution: policy outside Y");
  Value worst(Rat(0));
  bool first = true;
  for (int j = 0; j < inst.t(); ++j) {
    const Scenario& sc = inst.scenarios[j];
    Value best = Value::infinity();
    for (const auto& y : policies) {
      if (!scenario_feasible(sc, y)) continue;
      const Value v(rat_dot(sc.objective, y));
      if (v < best) best = v;
    }
    if (first || best > worst) worst = best;
    first = false;
    if (worst.is_infinite()) break;
  }
  return inst.t() == 0 ? Value::infinity() : worst;
}

namespace {

struct MaskEntry {
  uint64_t mask = 0;
  std::vector<long long> rep;
};

std::vector<MaskEntry> coverage_masks(const FiniteInstance& inst, const Rat& v_star) {
  const Value v(v_star);
  std::map<uint64_t, std::vector<long long>> reps;
  inst.y_space.enumerate(kEnumGuard, [&](const std::vector<long long>& y) {
    uint64_t mask = 0;
    for (int j = 0; j < inst.t(); ++j) {
      const Scenario& sc = inst.scenarios[j];
      if (scenario_feasible(sc, y) && Value(rat_dot(sc.objective, y)) <= v)
        mask |= 1ULL << j;
    }
    if (mask == 0) return;
    auto it = reps.find(mask);
    if (it == reps.end())
      reps.emplace(mask, y);
    else if (y < it->second)
      it->second = y;
  });
  std::vector<MaskEntry> out;
  for (auto& [mask, rep] : reps) out.push_back({mask, std::move(rep)});
  // Subset-dominated masks never help a cover.
  std::vector<MaskEntry> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool dominated = false;
    for (std::size_t l = 0; l < out.size() && !dominated; ++l)
      if (l != i && (out[i].mask & ~out[l].mask) == 0 &&
          (out[i].mask != out[l].mask || l < i))
        dominated = true;
    if (!dominated) kept.push_back(std::move(out[i]));
  }
  return kept;
}

class SetCoverSearch {
public:
  SetCoverSearch(std::vector<MaskEntry> sets, uint64_t full) : sets_(std::move(sets)), full_(full) {}

  std::vector<int> run() {
    // Greedy cover as the initial incumbent.
    std::vector<int> greedy;
    uint64_t uncovered = full_;
    while (uncovered) {
      int pick = -1, pick_gain = 0;
      for (std::size_t i = 0; i < sets_.size(); ++i) {
        const int gain = std::popcount(sets_[i].mask & uncovered);
        if (gain > pick_gain) {
          pick_gain = gain;
          pick = static_cast<int>(i);
        }
      }
      if (pick < 0) throw std::logic_error("set cover: uncoverable scenario");
      greedy.push_back(pick);
      uncovered &= ~sets_[pick].mask;
    }
    best_ = greedy;
    chosen_.clear();
    dfs(full_);
    return best_;
  }

private:
  void dfs(uint64_t uncovered) {
    if (!uncovered) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    int max_gain = 0;
    for (const auto& s : sets_) max_gain = std::max(max_gain, std::popcount(s.mask & uncovered));
    if (max_gain == 0) return;
    const int lb = (std::popcount(uncovered) + max_gain - 1) / max_gain;
    if (chosen_.size() + lb >= best_.size()) return;
    const int lowest = std::countr_zero(uncovered);
    std::vector<std::pair<int, int>> candidates;  // (-gain, index) for stable order
    for (std::size_t i = 0; i < sets_.size(); ++i)
      if (sets_[i].mask >> lowest & 1)
        candidates.emplace_back(-std::popcount(sets_[i].mask & uncovered),
                                static_cast<int>(i));
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [neg_gain, i] : candidates) {
      chosen_.push_back(i);
      dfs(uncovered & ~sets_[i].mask);
      chosen_.pop_back();
    }
  }

  std::vector<MaskEntry> sets_;
  uint64_t full_;
  std::vector<int> chosen_, best_;
};

}  // namespace

MinKOracle brute_force_min_k(const FiniteInstance& inst) {
  if (inst.t() > 64)
    throw GuardExceeded("instance too large for oracle: t > 64");
  const Rat v_star = two_stage_value(inst);
  std::vector<MaskEntry> sets = coverage_masks(inst, v_star);
  const uint64_t full = inst.t() == 64 ? ~0ULL : (1ULL << inst.t()) - 1;
  uint64_t covered = 0;
  for (const auto& s : sets) covered |= s.mask;
  if (covered != full) throw std::logic_error("coverage sets do not span all scenarios");
  SetCoverSearch search(sets, full);
  const std::vector<int> pick = search.run();
  MinKOracle out;
  out.k_opt = static_cast<int>(pick.size());
  for (int i : pick) out.witness.push_back(sets[i].rep);
  return out;
}

namespace {

constexpr long long kOptKNodeBudget = 20'000'000;
constexpr std::size_t kProfileCap = 4096;

struct OptKSearch {
  std::vector<std::vector<Value>> profiles;
  std::vector<std::vector<Value>> sufmin;
  int t = 0;
  Value best = Value::infinity();
  long long nodes = 0;

  Value node_bound(const std::vector<Value>& m, int start) const {
    Value bound(Rat(0));
    bool first = true;
    for (int j = 0; j < t; ++j) {
      const Value bj = std::min(m[j], sufmin[start][j]);
      if (first || bj > bound) bound = bj;
      first = false;
    }
    return bound;
  }

  void dfs(int start, int r, std::vector<Value>& m) {
    if (++nodes > kOptKNodeBudget)
      throw GuardExceeded("opt(k) search exceeded its node budget");
    if (r == 0) {
      Value v(Rat(0));
      bool first = true;
      for (int j = 0; j < t; ++j) {
        if (first || m[j] > v) v = m[j];
        first = false;
      }
      if (v < best) best = v;
      return;
    }
    if (node_bound(m, start) >= best) return;
    const int last = static_cast<int>(profiles.size()) - r;
    for (int i = start; i <= last; ++i) {
      std::vector<Value> next(m);
      for (int j = 0; j < t; ++j)
        if (profiles[i][j] < next[j]) next[j] = profiles[i][j];
      dfs(i + 1, r - 1, next);
    }
  }
};

}  // namespace

Value brute_force_opt_k(const FiniteInstance& inst, int k) {
  if (inst.t() > 64)
    throw GuardExceeded("instance too large for oracle: t > 64");
  if (k <= 0) return Value::infinity();
  std::map<std::vector<Value>, std::vector<long long>> seen;
  inst.y_space.enumerate(kEnumGuard, [&](const std::vector<long long>& y) {
    std::vector<Value> profile(inst.t());
    for (int j = 0; j < inst.t(); ++j) {
      const Scenario& sc = inst.scenarios[j];
      profile[j] = scenario_feasible(sc, y) ? Value(rat_dot(sc.objective, y))
                                            : Value::infinity();
    }
    auto it = seen.find(profile);
    if (it == seen.end()) seen.emplace(std::move(profile), y);
  });
  if (seen.size() > kProfileCap)
    throw GuardExceeded("instance too large for oracle: too many distinct profiles");

  OptKSearch search;
  search.t = inst.t();
  for (auto& [profile, y] : seen) search.profiles.push_back(profile);
  const int p = static_cast<int>(search.profiles.size());
  if (p == 0) return Value::infinity();

  // Componentwise-dominated profiles can be dropped without changing opt(k).
  if (p <= 2048) {
    std::vector<std::vector<Value>> kept;
    for (int i = 0; i < p; ++i) {
      bool dominated = false;
      for (int l = 0; l < p && !dominated; ++l) {
        if (l == i) continue;
        bool le = true, lt = false;
        for (int j = 0; j < search.t && le; ++j) {
          if (search.profiles[l][j] > search.profiles[i][j]) le = false;
          if (search.profiles[l][j] < search.profiles[i][j]) lt = true;
        }
        if (le && (lt || l < i)) dominated = true;
      }
      if (!dominated) kept.push_back(search.profiles[i]);
    }
    search.profiles = std::move(kept);
  }

  const int np = static_cast<int>(search.profiles.size());
  const int slots = std::min(k, np);
  search.sufmin.assign(np + 1, std::vector<Value>(search.t, Value::infinity()));
  for (int i = np - 1; i >= 0; --i)
    for (int j = 0; j < search.t; ++j)
      search.sufmin[i][j] = std::min(search.profiles[i][j], search.sufmin[i + 1][j]);

  std::vector<Value> m(search.t, Value::infinity());
  search.dfs(0, slots, m);
  return search.best;
}

}  // namespace kadapt
