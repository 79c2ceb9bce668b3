#include "kadapt/fourier_motzkin.hpp"

#include <map>

#include "kadapt/errors.hpp"
#include "kadapt/rng.hpp"

namespace kadapt {

bool holds(const LinIneq& q, const std::vector<Rat>& x) {
  Rat dot = 0;
  for (std::size_t i = 0; i < q.a.size(); ++i) dot += q.a[i] * x[i];
  return q.strict ? dot > q.rhs : dot >= q.rhs;
}

namespace {

constexpr std::size_t kRowCap = 200000;

bool is_zero_row(const LinIneq& q) {
  for (const auto& v : q.a)
    if (v != 0) return false;
  return true;
}

// Scales so the coefficient vector is a primitive integer vector; the
// inequality direction pins the sign, so only positive scaling is allowed.
void canonicalize(LinIneq& q) {
  Int l = 1;
  for (const auto& v : q.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  Int g = 0;
  std::vector<Int> ints(q.a.size());
  for (std::size_t i = 0; i < q.a.size(); ++i) {
    ints[i] = q.a[i].get_num() * (l / q.a[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) return;  // constant row, left as-is
  for (std::size_t i = 0; i < q.a.size(); ++i) q.a[i] = Rat(ints[i] / g);
  q.rhs *= Rat(l) / Rat(g);
}

// Keeps the strongest row per coefficient vector; returns false on a
// violated constant row (infeasible system).
bool dedup(std::vector<LinIneq>& rows) {
  std::map<std::vector<Rat>, LinIneq> best;
  for (auto& q : rows) {
    if (is_zero_row(q)) {
      const bool ok = q.strict ? 0 > q.rhs : 0 >= q.rhs;
      if (!ok) return false;
      continue;
    }
    canonicalize(q);
    auto it = best.find(q.a);
    if (it == best.end()) {
      best.emplace(q.a, q);
    } else {
      LinIneq& kept = it->second;
      if (q.rhs > kept.rhs || (q.rhs == kept.rhs && q.strict && !kept.strict))
        kept = q;
    }
  }
  rows.clear();
  for (auto& [key, q] : best) rows.push_back(std::move(q));
  return true;
}

}  // namespace

FMTower fm_eliminate(std::vector<LinIneq> sys, int nvars) {
  for (auto& q : sys) q.a.resize(nvars, Rat(0));
  FMTower tower;
  tower.nvars = nvars;
  tower.feasible = true;
  if (!dedup(sys)) {
    tower.feasible = false;
    return tower;
  }
  tower.stages.push_back(sys);
  for (int v = nvars - 1; v >= 0; --v) {
    std::vector<LinIneq> next;
    std::vector<const LinIneq*> pos, neg;
    for (const auto& q : sys) {
      if (q.a[v] > 0)
        pos.push_back(&q);
      else if (q.a[v] < 0)
        neg.push_back(&q);
      else
        next.push_back(q);
    }
    for (const auto* p : pos)
      for (const auto* n : neg) {
        const Rat cp = -n->a[v];
        const Rat cn = p->a[v];
        LinIneq q;
        q.a.resize(nvars, Rat(0));
        for (int j = 0; j < v; ++j) q.a[j] = cp * p->a[j] + cn * n->a[j];
        q.rhs = cp * p->rhs + cn * n->rhs;
        q.strict = p->strict || n->strict;
        next.push_back(std::move(q));
        if (next.size() > kRowCap)
          throw GuardExceeded("projection blow-up in variable elimination");
      }
    if (!dedup(next)) {
      tower.feasible = false;
      return tower;
    }
    tower.stages.push_back(next);
    sys = std::move(next);
  }
  return tower;
}

bool fm_feasible(const std::vector<LinIneq>& sys, int nvars) {
  return fm_eliminate(sys, nvars).feasible;
}

namespace {

// Value inside the interval implied for variable v by `stage`, given the
// already fixed coordinates x[0..v-1]; `pick` maps a nonempty open or closed
// interval into itself.
template <class Pick>
Rat solve_coordinate(const std::vector<LinIneq>& stage, const std::vector<Rat>& x,
                     int v, Pick&& pick) {
  bool has_lo = false, has_hi = false;
  Rat lo = 0, hi = 0;
  for (const auto& q : stage) {
    if (q.a[v] == 0) continue;
    Rat rest = q.rhs;
    for (int j = 0; j < v; ++j) rest -= q.a[j] * x[j];
    const Rat bound = rest / q.a[v];
    if (q.a[v] > 0) {
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    } else {
      if (!has_hi || bound < hi) hi = bound, has_hi = true;
    }
  }
  return pick(has_lo, lo, has_hi, hi);
}

Rat midpoint(bool has_lo, const Rat& lo, bool has_hi, const Rat& hi) {
  if (has_lo && has_hi) return lo == hi ? lo : Rat(lo + hi) / 2;
  if (has_lo) return lo + 1;
  if (has_hi) return hi - 1;
  return 0;
}

}  // namespace

std::optional<std::vector<Rat>> fm_sample(const FMTower& tower) {
  if (!tower.feasible) return std::nullopt;
  std::vector<Rat> x;
  for (int v = 0; v < tower.nvars; ++v)
    x.push_back(solve_coordinate(tower.stages[tower.nvars - 1 - v], x, v, midpoint));
  return x;
}

std::optional<std::vector<Rat>> fm_sample(const std::vector<LinIneq>& sys, int nvars) {
  return fm_sample(fm_eliminate(sys, nvars));
}

std::vector<std::vector<Rat>> fm_samples(const std::vector<LinIneq>& sys, int nvars,
                                         int count, uint64_t seed) {
  const FMTower tower = fm_eliminate(sys, nvars);
  std::vector<std::vector<Rat>> out;
  if (!tower.feasible) return out;
  Rng rng(seed);
  for (int s = 0; s < count; ++s) {
    std::vector<Rat> x;
    for (int v = 0; v < tower.nvars; ++v) {
      const Rat theta = rat_of(rng.uniform(1, 999), 1000);
      auto pick = [&](bool has_lo, const Rat& lo, bool has_hi, const Rat& hi) {
        if (has_lo && has_hi) return lo == hi ? lo : Rat(lo + (hi - lo) * theta);
        if (has_lo) return Rat(lo + theta + 1);
        if (has_hi) return Rat(hi - theta - 1);
        return Rat(theta);
      };
      x.push_back(solve_coordinate(tower.stages[tower.nvars - 1 - v], x, v, pick));
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<LinIneq> box_system(const std::vector<Rat>& lower,
                                const std::vector<Rat>& upper, bool strict) {
  const int n = static_cast<int>(lower.size());
  std::vector<LinIneq> sys;
  for (int i = 0; i < n; ++i) {
    LinIneq lo;
    lo.a.assign(n, Rat(0));
    lo.a[i] = 1;
    lo.rhs = lower[i];
    lo.strict = strict;
    sys.push_back(std::move(lo));
    LinIneq hi;
    hi.a.assign(n, Rat(0));
    hi.a[i] = -1;
    hi.rhs = -upper[i];
    hi.strict = strict;
    sys.push_back(std::move(hi));
  }
  return sys;
}

}  // namespace kadapt
