#include "scenario_table.hpp"

#include <algorithm>
#include <cstdlib>

namespace kadapt::detail {

namespace {

// Scales rationals to integers by the denominator lcm; returns false when the
// scale or a scaled value leaves the int64 comfort zone.
bool scale_vector(const std::vector<Rat>& in, const Rat& rhs,
                  std::vector<long long>& out, long long& rhs_out, long long& scale_out) {
  Int l = rhs.get_den();
  for (const auto& v : in) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  if (!l.fits_slong_p() || l.get_si() > kCoeffCap) return false;
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Int scaled = in[i].get_num() * (l / in[i].get_den());
    if (!scaled.fits_slong_p()) return false;
    out[i] = scaled.get_si();
    if (std::llabs(out[i]) > kCoeffCap) return false;
  }
  const Int scaled_rhs = rhs.get_num() * (l / rhs.get_den());
  if (!scaled_rhs.fits_slong_p()) return false;
  rhs_out = scaled_rhs.get_si();
  if (std::llabs(rhs_out) > kCoeffCap) return false;
  scale_out = l.get_si();
  return true;
}

}  // namespace

long long dot_radius(const std::vector<long long>& a, const std::vector<long long>& lo,
                     const std::vector<long long>& hi) {
  __int128 r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long long m = std::max(std::llabs(lo[i]), std::llabs(hi[i]));
    r += static_cast<__int128>(std::llabs(a[i])) * m;
  }
  const __int128 cap = static_cast<__int128>(1) << 62;
  return r > cap ? -1 : static_cast<long long>(r);
}

InstanceTable build_table(const FiniteInstance& inst) {
  InstanceTable tab;
  if (inst.y_space.explicit_mode()) return tab;  // handled by list scans
  tab.lo = inst.y_space.lower;
  tab.hi = inst.y_space.upper;
  for (const auto& c : inst.y_space.constraints) {
    IntRow row;
    row.a = c.row;
    row.rhs = c.rhs;
    row.eq = c.sense == Sense::Eq;
    if (dot_radius(row.a, tab.lo, tab.hi) < 0) return tab;
    tab.det_rows.push_back(std::move(row));
  }
  for (const auto& sc : inst.scenarios) {
    ScenarioInts si;
    long long rhs_unused = 0;
    if (!scale_vector(sc.objective, Rat(0), si.obj, rhs_unused, si.obj_scale)) return tab;
    if (dot_radius(si.obj, tab.lo, tab.hi) < 0) return tab;
    for (const auto& c : sc.constraints) {
      IntRow row;
      long long scale_unused = 0;
      if (!scale_vector(c.row, c.rhs, row.a, row.rhs, scale_unused)) return tab;
      if (dot_radius(row.a, tab.lo, tab.hi) < 0) return tab;
      row.eq = c.sense == Sense::Eq;
      si.rows.push_back(std::move(row));
    }
    tab.scenarios.push_back(std::move(si));
  }
  tab.valid = true;
  return tab;
}

long long scaled_threshold(const ScenarioInts& sc, const InstanceTable& tab, const Rat& v) {
  const Int thr = rat_floor(Rat(int_of(sc.obj_scale)) * v);
  const long long radius = dot_radius(sc.obj, tab.lo, tab.hi);
  const Int lo = int_of(-radius - 1), hi = int_of(radius + 1);
  if (thr < lo) return -radius - 1;
  if (thr > hi) return radius + 1;
  return thr.get_si();
}

}  // namespace kadapt::detail
