#include "kadapt/arrangement.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "kadapt/errors.hpp"
#include "kadapt/fourier_motzkin.hpp"

namespace kadapt {
namespace {

constexpr unsigned long long kYGuard = 1ULL << 16;
constexpr int kPlaneCap = 24;

// Constraint row l of (x, y) as an affine function of xi: a . xi - rhs >= 0.
struct RowAffine {
  std::vector<Int> a;
  Int rhs;
};

RowAffine row_affine(const AffineInstance& inst, const std::vector<long long>& x,
                     const std::vector<long long>& y, int l) {
  RowAffine r;
  r.a.assign(inst.n_xi, Int(0));
  for (int i = 0; i < inst.n_xi; ++i) {
    Int acc = -int_of(inst.H[l][i]);
    for (int j = 0; j < inst.n_x; ++j) acc += int_of(inst.Ai[i][l][j]) * int_of(x[j]);
    for (int j = 0; j < inst.n_y; ++j) acc += int_of(inst.Bi[i][l][j]) * int_of(y[j]);
    r.a[i] = acc;
  }
  Int rhs = int_of(inst.h[l]);
  for (int j = 0; j < inst.n_x; ++j) rhs -= int_of(inst.A[l][j]) * int_of(x[j]);
  for (int j = 0; j < inst.n_y; ++j) rhs -= int_of(inst.B[l][j]) * int_of(y[j]);
  r.rhs = rhs;
  return r;
}

bool is_zero_vec(const std::vector<Int>& a) {
  for (const Int& v : a)
    if (v != 0) return false;
  return true;
}

// Primitive representative with positive leading nonzero entry.
void canonicalize(std::vector<Int>& a, Int& c) {
  Int g = 0;
  for (const Int& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (Int& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  for (const Int& v : a) {
    if (v == 0) continue;
    if (v < 0) {
      for (Int& w : a) w = -w;
      c = -c;
    }
    break;
  }
}

std::vector<Rat> to_rat_vec(const std::vector<Int>& a) {
  std::vector<Rat> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = Rat(a[i]);
  return out;
}

void append_u_system(const UBox& u, bool strict, std::vector<LinIneq>& sys) {
  auto box = box_system(u.lower, u.upper, strict);
  sys.insert(sys.end(), box.begin(), box.end());
  for (const RatConstraint& c0 : u.constraints) {
    RatConstraint c = normalize(c0);
    if (c.sense == Sense::Eq) {
      std::vector<Rat> neg(c.row);
      for (Rat& v : neg) v = -v;
      sys.push_back({c.row, c.rhs, strict});
      sys.push_back({std::move(neg), -c.rhs, strict});
    } else {
      sys.push_back({c.row, c.rhs, strict});
    }
  }
}

void append_sign(const Hyperplane& p, char sign, std::vector<LinIneq>& sys) {
  std::vector<Rat> a = to_rat_vec(p.normal);
  Rat c(p.offset);
  if (sign == '+') {
    sys.push_back({std::move(a), std::move(c), true});
  } else {
    for (Rat& v : a) v = -v;
    sys.push_back({std::move(a), -c, true});
  }
}

std::vector<LinIneq> region_system(const Region& region,
                                   const std::vector<Hyperplane>& planes, const UBox& u) {
  std::vector<LinIneq> sys;
  append_u_system(u, true, sys);
  for (size_t k = 0; k < planes.size(); ++k) append_sign(planes[k], region.signs[k], sys);
  return sys;
}

void require_region_shape(const Region& region, const std::vector<Hyperplane>& planes,
                          const AffineInstance& inst) {
  if (region.signs.size() != planes.size())
    throw std::invalid_argument("region signs do not match the plane list");
  if (static_cast<int>(region.witness.size()) != inst.n_xi)
    throw std::invalid_argument("region witness has wrong dimension");
}

const std::vector<long long>& require_first_stage(const AffineInstance& inst,
                                                  const std::vector<long long>& x) {
  for (const auto& cand : inst.X)
    if (cand == x) return x;
  throw std::invalid_argument("x is not a first-stage point of the instance");
}

bool row_holds_at(const RowAffine& r, const std::vector<Rat>& xi) {
  Rat lhs(0);
  for (size_t i = 0; i < r.a.size(); ++i) lhs += Rat(r.a[i]) * xi[i];
  return lhs >= Rat(r.rhs);
}

std::vector<std::vector<long long>> feasible_at_point(const AffineInstance& inst,
                                                      const std::vector<long long>& x,
                                                      const std::vector<Rat>& xi) {
  std::vector<std::vector<long long>> out;
  inst.y_space.enumerate(kYGuard, [&](const std::vector<long long>& y) {
    for (int l = 0; l < inst.m; ++l)
      if (!row_holds_at(row_affine(inst, x, y, l), xi)) return;
    out.push_back(y);
  });
  return out;
}

// Exact solve of a square rational system by Gaussian elimination; nullopt on
// singular matrices.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m,
                                             std::vector<Rat> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = b[i] / m[i][i];
    out[i].canonicalize();
  }
  return out;
}

bool in_closed_u(const UBox& u, const std::vector<Rat>& p) {
  for (int i = 0; i < u.dim(); ++i)
    if (p[i] < u.lower[i] || p[i] > u.upper[i]) return false;
  for (const RatConstraint& c0 : u.constraints) {
    RatConstraint c = normalize(c0);
    Rat lhs(0);
    for (int i = 0; i < u.dim(); ++i) lhs += c.row[i] * p[i];
    if (c.sense == Sense::Eq ? lhs != c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

bool in_region_closure(const Region& region, const std::vector<Hyperplane>& planes,
                       const std::vector<Rat>& p) {
  for (size_t k = 0; k < planes.size(); ++k) {
    Rat lhs(0);
    for (size_t i = 0; i < p.size(); ++i) lhs += Rat(planes[k].normal[i]) * p[i];
    const Rat off(planes[k].offset);
    if (region.signs[k] == '+' ? lhs < off : lhs > off) return false;
  }
  return true;
}

}  // namespace

std::vector<Hyperplane> hyperplanes_for(const AffineInstance& inst,
                                        const std::vector<long long>& x) {
  if (inst.n_xi < 1 || inst.n_xi > 3)
    throw GuardExceeded("hyperplanes_for supports 1 <= n_xi <= 3");
  require_first_stage(inst, x);

  std::vector<LinIneq> u_sys;
  append_u_system(inst.u_box, false, u_sys);

  std::map<std::pair<std::vector<Int>, Int>,
           std::vector<std::pair<std::vector<long long>, int>>>
      found;
  inst.y_space.enumerate(kYGuard, [&](const std::vector<long long>& y) {
    for (int l = 0; l < inst.m; ++l) {
      RowAffine r = row_affine(inst, x, y, l);
      if (is_zero_vec(r.a)) continue;  // xi-free row, never a plane
      canonicalize(r.a, r.rhs);
      auto key = std::make_pair(r.a, r.rhs);
      auto it = found.find(key);
      if (it != found.end()) {
        it->second.emplace_back(y, l);
        continue;
      }
      // Keep only planes that actually meet the (closed) uncertainty set.
      std::vector<LinIneq> sys(u_sys);
      std::vector<Rat> arat = to_rat_vec(r.a);
      std::vector<Rat> aneg(arat);
      for (Rat& v : aneg) v = -v;
      sys.push_back({std::move(arat), Rat(r.rhs), false});
      sys.push_back({std::move(aneg), Rat(-r.rhs), false});
      if (fm_feasible(sys, inst.n_xi)) found[std::move(key)].emplace_back(y, l);
    }
  });

  std::vector<Hyperplane> out;
  out.reserve(found.size());
  for (auto& [key, prov] : found)
    out.push_back({key.first, key.second, std::move(prov)});
  return out;
}

std::vector<Region> enumerate_regions(const std::vector<Hyperplane>& planes,
                                      const UBox& u) {
  if (static_cast<int>(planes.size()) > kPlaneCap)
    throw GuardExceeded("enumerate_regions supports at most 24 hyperplanes");
  const int d = u.dim();

  std::vector<LinIneq> interior;
  append_u_system(u, true, interior);
  if (!fm_feasible(interior, d))
    throw std::invalid_argument("uncertainty set has empty interior");

  // Grow sign prefixes one plane at a time; infeasible prefixes never spawn
  // descendants, so the work stays near the true cell count.
  std::vector<std::string> prefixes{""};
  for (size_t k = 0; k < planes.size(); ++k) {
    std::vector<std::string> next;
    for (const std::string& pre : prefixes) {
      for (char sign : {'+', '-'}) {
        std::vector<LinIneq> sys(interior);
        for (size_t i = 0; i < k; ++i) append_sign(planes[i], pre[i], sys);
        append_sign(planes[k], sign, sys);
        if (fm_feasible(sys, d)) next.push_back(pre + sign);
      }
    }
    prefixes = std::move(next);
  }

  std::vector<Region> out;
  out.reserve(prefixes.size());
  for (const std::string& signs : prefixes) {
    std::vector<LinIneq> sys(interior);
    for (size_t i = 0; i < planes.size(); ++i) append_sign(planes[i], signs[i], sys);
    auto w = fm_sample(sys, d);
    if (!w) throw std::logic_error("feasible region lost its witness");
    out.push_back({signs, std::move(*w), {}});
  }
  return out;
}

std::vector<std::vector<long long>> feasible_set_on_region(
    const AffineInstance& inst, const std::vector<long long>& x, const Region& region,
    const std::vector<Hyperplane>& planes, bool cross_check) {
  require_first_stage(inst, x);
  require_region_shape(region, planes, inst);
  auto result = feasible_at_point(inst, x, region.witness);
  if (cross_check) {
    auto sys = region_system(region, planes, inst.u_box);
    for (const auto& pt : fm_samples(sys, inst.n_xi, 3, 0x6b616461'70743031ULL))
      if (feasible_at_point(inst, x, pt) != result)
        throw std::logic_error("feasible set varies within one region");
  }
  return result;
}

bool verify_recourse_stability(const AffineInstance& inst,
                               const std::vector<long long>& x, const Region& region,
                               const std::vector<Hyperplane>& planes) {
  require_first_stage(inst, x);
  require_region_shape(region, planes, inst);
  const auto base = region_system(region, planes, inst.u_box);

  bool stable = true;
  inst.y_space.enumerate(kYGuard, [&](const std::vector<long long>& y) {
    if (!stable) return;
    for (int l = 0; l < inst.m; ++l) {
      RowAffine r = row_affine(inst, x, y, l);
      std::vector<Rat> arat = to_rat_vec(r.a);
      std::vector<Rat> aneg(arat);
      for (Rat& v : aneg) v = -v;

      std::vector<LinIneq> sat(base);
      sat.push_back({std::move(arat), Rat(r.rhs), false});
      std::vector<LinIneq> vio(base);
      vio.push_back({std::move(aneg), Rat(-r.rhs), true});
      if (fm_feasible(sat, inst.n_xi) && fm_feasible(vio, inst.n_xi)) {
        stable = false;
        return;
      }
    }
  });
  return stable;
}

int empirical_R(const AffineInstance& inst, const std::vector<long long>& x) {
  const auto planes = hyperplanes_for(inst, x);
  const auto regions = enumerate_regions(planes, inst.u_box);
  const UBox& u = inst.u_box;
  const int d = u.dim();

  // Boundary equations of the closed uncertainty set plus the arrangement.
  std::vector<std::pair<std::vector<Rat>, Rat>> eqs;
  for (const Hyperplane& p : planes) eqs.emplace_back(to_rat_vec(p.normal), Rat(p.offset));
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> e(d, Rat(0));
    e[i] = 1;
    eqs.emplace_back(e, u.lower[i]);
    eqs.emplace_back(std::move(e), u.upper[i]);
  }
  for (const RatConstraint& c0 : u.constraints) {
    RatConstraint c = normalize(c0);
    eqs.emplace_back(c.row, c.rhs);
  }

  std::set<std::vector<Rat>> probes;

  // All d-subsets of the boundary equations: the arrangement's vertices.
  const int e = static_cast<int>(eqs.size());
  std::vector<int> pick(d);
  auto try_vertex = [&](const std::vector<int>& idx) {
    std::vector<std::vector<Rat>> m;
    std::vector<Rat> b;
    for (int i : idx) {
      m.push_back(eqs[i].first);
      b.push_back(eqs[i].second);
    }
    if (auto p = solve_square(std::move(m), std::move(b)))
      if (in_closed_u(u, *p)) probes.insert(std::move(*p));
  };
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == d) {
      try_vertex(pick);
      return;
    }
    for (int i = from; i <= e - (d - depth); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (e >= d) rec(rec, 0, 0);

  // A grid on each facet of the box.
  constexpr int kGrid = 6;
  for (int f = 0; f < d; ++f) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> steps(d, 0);
      while (true) {
        std::vector<Rat> p(d);
        for (int i = 0; i < d; ++i) {
          if (i == f)
            p[i] = side == 0 ? u.lower[i] : u.upper[i];
          else
            p[i] = u.lower[i] + (u.upper[i] - u.lower[i]) * Rat(steps[i], kGrid);
          p[i].canonicalize();
        }
        if (in_closed_u(u, p)) probes.insert(std::move(p));
        int i = d - 1;
        while (i >= 0 && (i == f || steps[i] == kGrid)) {
          if (i != f) steps[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++steps[i];
      }
    }
  }

  for (const auto& p : probes) {
    bool covered = false;
    for (const Region& r : regions)
      if (in_region_closure(r, planes, p)) {
        covered = true;
        break;
      }
    if (!covered) throw std::logic_error("region closures fail to cover U");
  }
  return static_cast<int>(regions.size());
}

}  // namespace kadapt
