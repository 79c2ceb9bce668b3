#include "kadapt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kadapt/errors.hpp"

namespace kadapt {

namespace {

constexpr unsigned long long kDiamGuard = 4096;
constexpr unsigned long long kYEnumGuard = 1ULL << 16;

// Range of y . b over Y: coordinatewise sign-split on the box, exact
// enumeration when deterministic constraints are present and Y is small.
struct IntRange {
  Int lo, hi;
};

IntRange y_dot_range(const YSpace& ys, const std::vector<long long>& b) {
  const auto dot = [&](const std::vector<long long>& y) {
    Int s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) s += int_of(b[i]) * int_of(y[i]);
    return s;
  };
  const bool enumerate = ys.explicit_mode() ||
                         (!ys.constraints.empty() &&
                          ys.raw_box_size() <= static_cast<long>(kYEnumGuard));
  if (enumerate) {
    bool first = true;
    IntRange r{0, 0};
    ys.enumerate(kYEnumGuard, [&](const std::vector<long long>& y) {
      const Int v = dot(y);
      if (first || v < r.lo) r.lo = v;
      if (first || v > r.hi) r.hi = v;
      first = false;
    });
    if (first) throw std::invalid_argument("Y is empty");
    return r;
  }
  IntRange r{0, 0};
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Int c = int_of(b[i]);
    r.lo += c * int_of(b[i] >= 0 ? ys.lower[i] : ys.upper[i]);
    r.hi += c * int_of(b[i] >= 0 ? ys.upper[i] : ys.lower[i]);
  }
  return r;
}

IntRange x_dot_range(const std::vector<std::vector<long long>>& X,
                     const std::vector<long long>& a) {
  if (X.empty()) throw std::invalid_argument("X is empty");
  bool first = true;
  IntRange r{0, 0};
  for (const auto& x : X) {
    Int v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += int_of(a[i]) * int_of(x[i]);
    if (first || v < r.lo) r.lo = v;
    if (first || v > r.hi) r.hi = v;
    first = false;
  }
  return r;
}

std::vector<long long> matrix_row(const IntMatrix& M, int l) { return M[l]; }

}  // namespace

long long objective_bound(int n_xi) {
  if (n_xi < 1) throw std::invalid_argument("objective_bound: n_xi must be >= 1");
  return static_cast<long long>(n_xi) + 1;
}

double approx_gap(double L, double diam_Y, long long s, long long k) {
  if (s < 1 || s > k) throw std::invalid_argument("approx_gap: need 1 <= s <= k");
  if (L <= 0 || diam_Y < 0) throw std::invalid_argument("approx_gap: bad L or diam");
  return L * diam_Y * std::log(static_cast<double>(k) / static_cast<double>(s));
}

long long policies_for_alpha(double L, double diam_Y, int n_xi, double alpha) {
  if (alpha < 0) throw std::invalid_argument("policies_for_alpha: alpha must be >= 0");
  const long long full = objective_bound(n_xi);
  if (alpha == 0) return full;
  const double ld = L * diam_Y;
  if (ld <= 0) return 1;
  const double raw = static_cast<double>(full) * std::exp(-alpha / ld);
  const long long k = static_cast<long long>(std::ceil(raw - 1e-12));
  return std::clamp(k, 1LL, full);
}

DiamResult diam_of_yspace(const YSpace& ys) {
  const bool plain_box = !ys.explicit_mode() && ys.constraints.empty();
  if (!plain_box && ys.raw_box_size() <= static_cast<long>(kDiamGuard)) {
    const auto pts = ys.enumerate_all(kDiamGuard);
    Int best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t l = i + 1; l < pts.size(); ++l) {
        Int d = 0;
        for (std::size_t c = 0; c < pts[i].size(); ++c) {
          const Int diff = int_of(pts[i][c]) - int_of(pts[l][c]);
          d += diff * diff;
        }
        if (d > best) best = d;
      }
    return {std::sqrt(best.get_d()), true};
  }
  double sq = 0;
  for (int i = 0; i < ys.dim(); ++i) {
    const double w = static_cast<double>(ys.upper[i] - ys.lower[i]);
    sq += w * w;
  }
  return {std::sqrt(sq), plain_box};
}

Int eta_integer_x(const AffineInstance& inst, bool trim_rhs) {
  // Coefficient of xi_i in row l is x.a^i_l + y.b^i_l - H_{li}; the rhs is
  // h_l - x.a_l - y.b_l. Count integer values per coordinate and multiply.
  std::vector<IntRange> coeff(inst.n_xi);
  for (int i = 0; i < inst.n_xi; ++i) {
    bool first = true;
    for (int l = 0; l < inst.m; ++l) {
      const IntRange xr = x_dot_range(inst.X, matrix_row(inst.Ai[i], l));
      const IntRange yr = y_dot_range(inst.y_space, matrix_row(inst.Bi[i], l));
      const Int lo = xr.lo + yr.lo - int_of(inst.H[l][i]);
      const Int hi = xr.hi + yr.hi - int_of(inst.H[l][i]);
      if (first || lo < coeff[i].lo) coeff[i].lo = lo;
      if (first || hi > coeff[i].hi) coeff[i].hi = hi;
      first = false;
    }
  }
  IntRange rhs{0, 0};
  {
    bool first = true;
    for (int l = 0; l < inst.m; ++l) {
      const IntRange xr = x_dot_range(inst.X, matrix_row(inst.A, l));
      const IntRange yr = y_dot_range(inst.y_space, matrix_row(inst.B, l));
      const Int lo = int_of(inst.h[l]) - xr.hi - yr.hi;
      const Int hi = int_of(inst.h[l]) - xr.lo - yr.lo;
      if (first || lo < rhs.lo) rhs.lo = lo;
      if (first || hi > rhs.hi) rhs.hi = hi;
      first = false;
    }
  }
  if (trim_rhs) {
    // Values of the rhs outside the range the lhs can reach over the U box
    // yield no hyperplane inside U.
    Rat lhs_lo = 0, lhs_hi = 0;
    for (int i = 0; i < inst.n_xi; ++i) {
      bool first = true;
      Rat lo = 0, hi = 0;
      for (const Int& w : {coeff[i].lo, coeff[i].hi})
        for (const Rat& xi : {inst.u_box.lower[i], inst.u_box.upper[i]}) {
          const Rat p = Rat(w) * xi;
          if (first || p < lo) lo = p;
          if (first || p > hi) hi = p;
          first = false;
        }
      lhs_lo += lo;
      lhs_hi += hi;
    }
    if (rhs.lo < rat_ceil(lhs_lo)) rhs.lo = rat_ceil(lhs_lo);
    if (rhs.hi > rat_floor(lhs_hi)) rhs.hi = rat_floor(lhs_hi);
  }
  Int total = rhs.hi >= rhs.lo ? Int(rhs.hi - rhs.lo + 1) : Int(0);
  for (int i = 0; i < inst.n_xi; ++i) total *= coeff[i].hi - coeff[i].lo + 1;
  return std::max(Int(1), total);
}

Int eta_mixed_x(const AffineInstance& inst) {
  Int total = 0;
  for (int l = 0; l < inst.m; ++l) {
    Int prod = 1;
    {
      const IntRange r = y_dot_range(inst.y_space, matrix_row(inst.B, l));
      prod *= r.hi - r.lo + 1;
    }
    for (int i = 0; i < inst.n_xi; ++i) {
      const IntRange r = y_dot_range(inst.y_space, matrix_row(inst.Bi[i], l));
      prod *= r.hi - r.lo + 1;
    }
    total += prod;
  }
  return std::max(Int(1), total);
}

namespace {

// Exact rank by fraction-free (Bareiss) elimination.
int rank_of(std::vector<std::vector<Int>> M) {
  const int rows = static_cast<int>(M.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(M[0].size());
  int rank = 0;
  Int prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(M[rank], M[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int cc = c + 1; cc < cols; ++cc)
        M[r][cc] = (M[rank][c] * M[r][cc] - M[r][c] * M[rank][cc]) / prev;
      M[r][c] = 0;
    }
    prev = M[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace

int omega(const AffineInstance& inst) {
  int best = 0;
  for (const auto& x : inst.X) {
    std::vector<std::vector<Int>> M(inst.m, std::vector<Int>(inst.n_xi));
    for (int l = 0; l < inst.m; ++l)
      for (int i = 0; i < inst.n_xi; ++i) {
        Int s = 0;
        for (int j = 0; j < inst.n_x; ++j)
          s += int_of(inst.Ai[i][l][j]) * int_of(x[j]);
        M[l][i] = s - int_of(inst.H[l][i]);
      }
    best = std::max(best, rank_of(std::move(M)));
  }
  return best;
}

Int region_count_bound(const Int& eta, int rank) {
  if (eta < 1 || rank < 0)
    throw std::invalid_argument("region_count_bound: need eta >= 1, rank >= 0");
  Int total = 0;
  for (int i = 0; i <= rank; ++i) {
    Int c;
    mpz_bin_ui(c.get_mpz_t(), eta.get_mpz_t(), static_cast<unsigned long>(i));
    total += c;
  }
  return total;
}

nlohmann::json to_json(const BoundReport& rep) {
  nlohmann::json j;
  j["name"] = rep.name;
  if (rep.value.fits_slong_p())
    j["value"] = rep.value.get_si();
  else
    j["value"] = rep.value.get_str();
  j["assumptions"] = rep.assumptions;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [symbol, value] : rep.formula_trace)
    trace.push_back({{"symbol", symbol}, {"value", value}});
  j["formula_trace"] = trace;
  return j;
}

BoundReport constraint_k_bound(const AffineInstance& inst, bool fixed_recourse,
                               bool objective_uncertain) {
  BoundReport rep;
  rep.name = "constraint_k_bound";
  const Int eta_int = eta_integer_x(inst);
  const Int eta_mix = eta_mixed_x(inst);
  const Int eta = std::min(eta_int, eta_mix);
  int exponent;
  if (fixed_recourse) {
    for (const auto& Bi : inst.Bi)
      for (const auto& row : Bi)
        for (long long v : row)
          if (v != 0)
            throw std::invalid_argument(
                "fixed_recourse claimed but some B^i is nonzero");
    exponent = omega(inst);
    rep.assumptions.push_back("fixed recourse: exponent is the rank bound omega");
  } else {
    exponent = inst.n_xi;
    rep.assumptions.push_back("random recourse: exponent is n_xi");
  }
  const Int R = region_count_bound(eta, exponent);

  Int y_count;
  bool y_exact = true;
  if (inst.y_space.explicit_mode()) {
    y_count = int_of(static_cast<long long>(inst.y_space.explicit_points.size()));
  } else if (inst.y_space.constraints.empty()) {
    y_count = inst.y_space.raw_box_size();
  } else if (inst.y_space.raw_box_size() <= static_cast<long>(kYEnumGuard)) {
    y_count = inst.y_space.count_points(kYEnumGuard);
  } else {
    y_count = inst.y_space.raw_box_size();
    y_exact = false;
    rep.assumptions.push_back("|Y| replaced by its box-size upper bound");
  }

  Int k;
  if (objective_uncertain) {
    k = std::min(Int(R * (inst.n_xi + 1)), y_count);
    rep.assumptions.push_back(
        "objective uncertain: k = min(R*(n_xi+1), |Y|) with R = sum_{i<=e} C(eta, i)");
  } else {
    k = std::min(R, y_count);
    rep.assumptions.push_back(
        "objective independent of xi: k = min(R, |Y|) with R = sum_{i<=e} C(eta, i)");
  }
  rep.value = k;
  rep.formula_trace = {
      {"eta_integer", eta_int.get_str()},
      {"eta_mixed", eta_mix.get_str()},
      {"eta", eta.get_str()},
      {"exponent", std::to_string(exponent)},
      {"R", R.get_str()},
      {"n_xi", std::to_string(inst.n_xi)},
      {"y_count", y_count.get_str() + (y_exact ? "" : " (upper bound)")},
      {"k", k.get_str()},
  };
  return rep;
}

double constraint_approx_gap(double L, double diam_Y, int n_xi, long long s) {
  if (s < 1 || s > static_cast<long long>(n_xi) + 1)
    throw std::invalid_argument("constraint_approx_gap: need 1 <= s <= n_xi+1");
  if (L <= 0 || diam_Y < 0)
    throw std::invalid_argument("constraint_approx_gap: bad L or diam");
  return L * diam_Y *
         std::log(static_cast<double>(n_xi + 1) / static_cast<double>(s));
}

Int power_product(const Int& a, const Int& b, int p) {
  if (p < 0) throw std::invalid_argument("power_product: negative exponent");
  Int ra, rb;
  mpz_pow_ui(ra.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
  mpz_pow_ui(rb.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(p));
  return ra * rb;
}

}  // namespace kadapt
