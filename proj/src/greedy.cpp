#include "kadapt/greedy.hpp"

#include <algorithm>
#include <cmath>

#include "kadapt/errors.hpp"
#include "scenario_table.hpp"

namespace kadapt {

namespace {

using detail::InstanceTable;
using detail::IntRow;
using detail::kEnumGuard;

Rat rat_dot(const std::vector<Rat>& a, const std::vector<long long>& y) {
  Rat dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * rat_of(y[i]);
  return dot;
}

bool covers(const FiniteInstance& inst, int j, const std::vector<long long>& y,
            const Rat& v_star) {
  const Scenario& sc = inst.scenarios[j];
  for (const auto& c : sc.constraints) {
    const Rat dot = rat_dot(c.row, y);
    if (c.sense == Sense::Eq ? dot != c.rhs : dot < c.rhs) return false;
  }
  return rat_dot(sc.objective, y) <= v_star;
}

// Integer-kernel coverage test; thresholds are the per-scenario scaled v*.
bool covers_int(const InstanceTable& tab, const std::vector<long long>& thresholds,
                int j, const std::vector<long long>& y) {
  const auto& sc = tab.scenarios[j];
  long long obj = 0;
  for (std::size_t i = 0; i < y.size(); ++i) obj += sc.obj[i] * y[i];
  if (obj > thresholds[j]) return false;
  for (const auto& row : sc.rows) {
    long long dot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) dot += row.a[i] * y[i];
    if (row.eq ? dot != row.rhs : dot < row.rhs) return false;
  }
  return true;
}

std::vector<long long> scaled_thresholds(const InstanceTable& tab, const Rat& v_star) {
  std::vector<long long> thr;
  for (const auto& sc : tab.scenarios)
    thr.push_back(detail::scaled_threshold(sc, tab, v_star));
  return thr;
}

// Branch-and-bound engine for one max-coverage call. Phase 1 proves the
// optimal count starting from a warm incumbent; phase 2 rescans in pure
// lexicographic order and stops at the first leaf attaining it.
//
// The same subproblem has a textbook MIP form: maximize sum_j z_j over
// y in Y, z binary, with c_j.y <= v_star + M_j(1-z_j) and row slack
// T_j y >= d_j - M'_{jr}(1-z_j), where M_j bounds max_Y |c_j.y - v_star| and
// M'_{jr} the worst row violation over the y box. We keep the combinatorial
// search instead: it is exact over rationals (no big-M rounding pitfalls),
// needs no solver dependency, and the winnable-count bound prunes well on
// the box-shaped Y handled here.
class CoverageSearch {
public:
  CoverageSearch(const InstanceTable& tab, const CoverageSet& uncovered,
                 const Rat& v_star)
      : tab_(tab) {
    n_ = static_cast<int>(tab.lo.size());
    for (int j : uncovered.members()) {
      ScenState st;
      st.scenario = j;
      const auto& sc = tab.scenarios[j];
      st.threshold = detail::scaled_threshold(sc, tab, v_star);
      st.obj_sufmin.assign(n_ + 1, 0);
      for (int i = n_ - 1; i >= 0; --i)
        st.obj_sufmin[i] = st.obj_sufmin[i + 1] +
                           std::min(sc.obj[i] * tab.lo[i], sc.obj[i] * tab.hi[i]);
      for (const auto& row : sc.rows) st.rows.push_back(RowCtx(row, tab));
      scen_.push_back(std::move(st));
    }
    for (const auto& row : tab.det_rows) det_.push_back(RowCtx(row, tab));
    y_.assign(n_, 0);
  }

  // `count` must be achievable by some member of Y (or -1 for none); the
  // prove phase prunes at <=, which is sound exactly because the incumbent is
  // attainable even if this search never visits the attaining leaf.
  void set_incumbent(int count) { best_count_ = std::max(best_count_, count); }

  int optimal_count() {
    phase_ = Phase::Prove;
    dfs(0);
    return best_count_;
  }

  // Requires optimal_count() to have run.
  std::vector<long long> lex_witness() {
    phase_ = Phase::Witness;
    witness_.clear();
    dfs(0);
    return witness_;
  }

private:
  enum class Phase { Prove, Witness };

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
    bool open(int i, long long partial) const {
      if (partial + sufmax[i] < row->rhs) return false;
      if (row->eq && partial + sufmin[i] > row->rhs) return false;
      return true;
    }
    const IntRow* row;
    std::vector<long long> sufmin, sufmax;
    long long partial = 0;
  };

  struct ScenState {
    int scenario = 0;
    long long threshold = 0;
    long long obj_partial = 0;
    std::vector<long long> obj_sufmin;
    std::vector<RowCtx> rows;
    bool winnable = true;
  };

  bool scenario_open(const ScenState& st, int i) const {
    if (st.obj_partial + st.obj_sufmin[i] > st.threshold) return false;
    for (const auto& rc : st.rows)
      if (!rc.open(i, rc.partial)) return false;
    return true;
  }

  // true while the subtree may still contain a det-feasible leaf
  bool det_open(int i) const {
    for (const auto& rc : det_)
      if (!rc.open(i, rc.partial)) return false;
    return true;
  }

  void dfs(int i) {
    if (!det_open(i)) return;
    int winnable = 0;
    for (auto& st : scen_) {
      st.winnable = scenario_open(st, i);
      if (st.winnable) ++winnable;
    }
    if (phase_ == Phase::Prove ? winnable <= best_count_ : winnable < best_count_)
      return;
    if (!witness_.empty()) return;  // phase 2 already done
    if (i == n_) {
      // At a leaf the interval checks are exact, so winnable == covered.
      if (phase_ == Phase::Prove) {
        if (winnable > best_count_) best_count_ = winnable;
      } else if (winnable == best_count_) {
        witness_ = y_;
      }
      return;
    }
    for (long long v = tab_.lo[i]; v <= tab_.hi[i]; ++v) {
      y_[i] = v;
      push(i, v);
      dfs(i + 1);
      pop(i, v);
      if (!witness_.empty()) return;
    }
  }

  void push(int i, long long v) {
    for (auto& st : scen_) {
      st.obj_partial += tab_.scenarios[st.scenario].obj[i] * v;
      for (auto& rc : st.rows) rc.partial += rc.row->a[i] * v;
    }
    for (auto& rc : det_) rc.partial += rc.row->a[i] * v;
  }

  void pop(int i, long long v) {
    for (auto& st : scen_) {
      st.obj_partial -= tab_.scenarios[st.scenario].obj[i] * v;
      for (auto& rc : st.rows) rc.partial -= rc.row->a[i] * v;
    }
    for (auto& rc : det_) rc.partial -= rc.row->a[i] * v;
  }

  const InstanceTable& tab_;
  int n_ = 0;
  std::vector<ScenState> scen_;
  std::vector<RowCtx> det_;
  std::vector<long long> y_;
  int best_count_ = -1;
  Phase phase_ = Phase::Prove;
  std::vector<long long> witness_;
};

MaxCoverageResult coverage_by_enumeration(const FiniteInstance& inst,
                                          const CoverageSet& uncovered,
                                          const Rat& v_star) {
  MaxCoverageResult out;
  out.covered = CoverageSet(inst.t());
  out.opt_count = -1;
  const std::vector<int> targets = uncovered.members();
  inst.y_space.enumerate(kEnumGuard, [&](const std::vector<long long>& y) {
    int count = 0;
    for (int j : targets)
      if (covers(inst, j, y, v_star)) ++count;
    if (count > out.opt_count ||
        (count == out.opt_count && y < out.policy)) {
      out.opt_count = count;
      out.policy = y;
    }
  });
  if (out.opt_count < 0) throw std::invalid_argument("max_coverage: Y is empty");
  for (int j : targets)
    if (covers(inst, j, out.policy, v_star)) out.covered.set(j);
  return out;
}

// warm_count: an achievable coverage count, or -1 when unknown.
MaxCoverageResult max_coverage_with_table(const FiniteInstance& inst,
                                          const InstanceTable& tab,
                                          const CoverageSet& uncovered,
                                          const Rat& v_star, int warm_count) {
  if (!uncovered.any()) throw std::invalid_argument("max_coverage: uncovered is empty");
  if (!tab.valid) return coverage_by_enumeration(inst, uncovered, v_star);
  CoverageSearch search(tab, uncovered, v_star);
  search.set_incumbent(warm_count);
  MaxCoverageResult out;
  out.opt_count = search.optimal_count();
  if (out.opt_count < 0) throw std::invalid_argument("max_coverage: Y is empty");
  out.policy = search.lex_witness();
  if (out.policy.empty() && !tab.lo.empty())
    throw std::invalid_argument("max_coverage: Y is empty");
  out.covered = CoverageSet(inst.t());
  const std::vector<long long> thr = scaled_thresholds(tab, v_star);
  for (int j : uncovered.members())
    if (covers_int(tab, thr, j, out.policy)) out.covered.set(j);
  return out;
}

}  // namespace

MaxCoverageResult max_coverage(const FiniteInstance& inst, const CoverageSet& uncovered,
                               const Rat& v_star) {
  if (uncovered.size() != inst.t())
    throw std::invalid_argument("max_coverage: bitset width mismatch");
  return max_coverage_with_table(inst, detail::build_table(inst), uncovered, v_star, 0);
}

MinKResult greedy_min_k(const FiniteInstance& inst) {
  const Rat v_star = two_stage_value(inst);
  const InstanceTable tab = detail::build_table(inst);

  // Per-scenario argmins give warm incumbents for every max-coverage call.
  std::vector<std::vector<long long>> argmins;
  for (int j = 0; j < inst.t(); ++j)
    argmins.push_back(detail::solve_with_table(inst, tab, j).argmin);
  const std::vector<long long> thr =
      tab.valid ? scaled_thresholds(tab, v_star) : std::vector<long long>();
  auto covered_by = [&](int j, const std::vector<long long>& y) {
    return tab.valid ? covers_int(tab, thr, j, y) : covers(inst, j, y, v_star);
  };

  MinKResult res;
  res.optimal_value = v_star;
  CoverageSet uncovered(inst.t());
  uncovered.set_all();
  while (uncovered.any()) {
    int warm = -1;
    const std::vector<int> open = uncovered.members();
    for (int j : open) {
      int count = 0;
      for (int l : open)
        if (covered_by(l, argmins[j])) ++count;
      warm = std::max(warm, count);
    }
    MaxCoverageResult step = max_coverage_with_table(inst, tab, uncovered, v_star, warm);
    if (step.opt_count == 0) throw UncoverableScenarios(uncovered);
    if (res.trace.empty())
      res.k_lb = (inst.t() + step.opt_count - 1) / step.opt_count;
    res.policies.push_back(step.policy);
    res.trace.push_back({step.policy, step.opt_count});
    uncovered.subtract(step.covered);
  }
  res.k_ub = static_cast<int>(res.policies.size());
  return res;
}

double guarantee_ratio(int t) {
  if (t < 1) throw std::invalid_argument("guarantee_ratio: t must be >= 1");
  return 1.0 + std::log(static_cast<double>(t));
}

}  // namespace kadapt
