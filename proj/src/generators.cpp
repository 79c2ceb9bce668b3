#include "kadapt/generators.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <stdexcept>

#include "kadapt/rng.hpp"

namespace kadapt {

FiniteInstance generate_knapsack(int n_y, int t, uint64_t seed) {
  if (n_y < 1 || t < 1) throw std::invalid_argument("knapsack: n_y and t must be >= 1");
  Rng rng(seed);
  std::vector<long long> abar(n_y), cbar(n_y);
  long long abar_sum = 0;
  for (int i = 0; i < n_y; ++i) {
    abar[i] = rng.uniform(40, 60);
    abar_sum += abar[i];
  }
  for (int i = 0; i < n_y; ++i) cbar[i] = rng.uniform(abar[i] - 5, abar[i] + 5);
  const long long b10 = 2 * abar_sum;  // 10 * (0.2 * sum)
  const int gamma = n_y / 4;

  FiniteInstance inst;
  inst.name = "knapsack(" + std::to_string(n_y) + "," + std::to_string(t) + "," +
              std::to_string(seed) + ")";
  inst.seed = seed;
  inst.generated = true;
  inst.n_y = n_y;
  inst.y_space.lower.assign(n_y, 0);
  inst.y_space.upper.assign(n_y, 1);

  for (int j = 0; j < t; ++j) {
    const std::vector<int> cost_dev = rng.sample_indices(n_y, gamma);
    const std::vector<int> weight_dev = rng.sample_indices(n_y, gamma);
    Scenario sc;
    sc.objective.resize(n_y);
    for (int i = 0; i < n_y; ++i) sc.objective[i] = rat_of(10 * cbar[i]);
    for (int i : cost_dev) sc.objective[i] = rat_of(15 * cbar[i]);
    RatConstraint cover;
    cover.row.resize(n_y);
    for (int i = 0; i < n_y; ++i) cover.row[i] = rat_of(10 * abar[i]);
    for (int i : weight_dev) cover.row[i] = rat_of(15 * abar[i]);
    cover.sense = Sense::Ge;
    cover.rhs = rat_of(b10);
    sc.constraints.push_back(std::move(cover));
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

FiniteInstance reduce_set_cover(int universe_size,
                                const std::vector<std::vector<int>>& subsets) {
  if (universe_size < 1) throw std::invalid_argument("set cover: empty universe");
  if (subsets.empty()) throw std::invalid_argument("set cover: no subsets");
  std::vector<bool> covered(universe_size, false);
  for (const auto& s : subsets)
    for (int v : s) {
      if (v < 1 || v > universe_size)
        throw std::invalid_argument("set cover: element out of universe");
      covered[v - 1] = true;
    }
  if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
    throw std::invalid_argument("set cover: subsets do not cover the universe");

  FiniteInstance inst;
  inst.name = "set-cover(" + std::to_string(universe_size) + "," +
              std::to_string(subsets.size()) + ")";
  inst.n_y = universe_size;
  inst.y_space.lower.assign(universe_size, 0);
  inst.y_space.upper.assign(universe_size, 1);
  for (const auto& s : subsets) {
    std::vector<long long> indicator(universe_size, 0);
    for (int v : s) indicator[v - 1] = 1;
    inst.y_space.explicit_points.push_back(std::move(indicator));
  }
  for (int v = 0; v < universe_size; ++v) {
    Scenario sc;
    sc.objective.assign(universe_size, Rat(0));
    sc.objective[v] = -1;
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

namespace {

// "name(arg)" -> arg, or nullopt when `s` is not of that shape.
std::optional<int> parse_arity(const std::string& s, const std::string& stem) {
  if (s.size() < stem.size() + 3 || s.compare(0, stem.size(), stem) != 0) return std::nullopt;
  if (s[stem.size()] != '(' || s.back() != ')') return std::nullopt;
  const std::string inner = s.substr(stem.size() + 1, s.size() - stem.size() - 2);
  if (inner.empty()) return std::nullopt;
  for (char c : inner)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(inner);
}

FiniteInstance simplex_units(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("simplex-units: n out of range");
  FiniteInstance inst;
  inst.name = "simplex-units(" + std::to_string(n) + ")";
  inst.n_y = n;
  inst.y_space.lower.assign(n, 0);
  inst.y_space.upper.assign(n, 1);
  IntConstraint card;
  card.row.assign(n, 1);
  card.sense = Sense::Eq;
  card.rhs = 1;
  inst.y_space.add_constraint(card);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Scenario sc;
    sc.objective.assign(n, Rat(0));
    const int size = std::popcount(mask);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sc.objective[i] = rat_of(1, size);
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

AffineInstance recourse_regions() {
  AffineInstance inst;
  inst.name = "recourse-regions";
  inst.n_x = 1;
  inst.n_y = 2;
  inst.n_xi = 2;
  inst.m = 2;
  inst.X = {{0}};
  inst.y_space.lower = {0, 0};
  inst.y_space.upper = {1, 1};
  inst.A = {{0}, {0}};
  inst.Ai = {{{0}, {0}}, {{0}, {0}}};
  // Row 1 is -y1 + xi2 y2 <= xi1, row 2 is y1 + 3 y2 >= xi2.
  inst.B = {{1, 0}, {1, 3}};
  inst.Bi = {{{0, 0}, {0, 0}}, {{0, -1}, {0, 0}}};
  inst.H = {{-1, 0}, {0, 1}};
  inst.h = {0, 0};
  inst.u_box.lower = {rat_of(3, 2), rat_of(1, 2)};
  inst.u_box.upper = {rat_of(7, 2), rat_of(2)};
  inst.objective.c0 = {Rat(0), Rat(0)};
  return inst;
}

FiniteInstance cardinality_band(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("cardinality-band: n out of range");
  FiniteInstance inst;
  inst.name = "cardinality-band(" + std::to_string(n) + ")";
  inst.n_y = n;
  inst.y_space.lower.assign(n, 0);
  inst.y_space.upper.assign(n, 1);
  for (int j = 1; j <= n; ++j) {
    const Rat xi = rat_of(2 * j - 1, 2);  // j - 1/2
    Scenario sc;
    sc.objective.assign(n, Rat(0));
    RatConstraint upper;  // sum(y) <= xi
    upper.row.assign(n, Rat(1));
    upper.sense = Sense::Le;
    upper.rhs = xi;
    sc.constraints.push_back(normalize(std::move(upper)));
    RatConstraint lower;  // xi <= sum(y) + 1
    lower.row.assign(n, Rat(1));
    lower.sense = Sense::Ge;
    lower.rhs = xi - 1;
    sc.constraints.push_back(std::move(lower));
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

AffineInstance cardinality_band_affine(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("cardinality-band-affine: n out of range");
  AffineInstance inst;
  inst.name = "cardinality-band-affine(" + std::to_string(n) + ")";
  inst.n_x = 1;
  inst.n_y = n;
  inst.n_xi = 1;
  inst.m = 2;
  inst.X = {{0}};
  inst.y_space.lower.assign(n, 0);
  inst.y_space.upper.assign(n, 1);
  inst.A = {{0}, {0}};
  inst.Ai = {{{0}, {0}}};
  // Row 1 is sum(y) <= xi1, row 2 is xi1 <= sum(y) + 1.
  inst.B.assign(2, std::vector<long long>(n));
  inst.B[0].assign(n, -1);
  inst.B[1].assign(n, 1);
  inst.Bi = {IntMatrix(2, std::vector<long long>(n, 0))};
  inst.H = {{-1}, {1}};
  inst.h = {0, -1};
  inst.u_box.lower = {Rat(0)};
  inst.u_box.upper = {rat_of(n)};
  inst.objective.c0.assign(n, Rat(0));
  return inst;
}

}  // namespace

Instance builtin_example(const std::string& name) {
  if (auto n = parse_arity(name, "simplex-units")) return simplex_units(*n);
  if (name == "recourse-regions") return recourse_regions();
  if (auto n = parse_arity(name, "cardinality-band")) return cardinality_band(*n);
  if (auto n = parse_arity(name, "cardinality-band-affine"))
    return cardinality_band_affine(*n);
  throw std::invalid_argument("unknown builtin instance '" + name + "'");
}

FiniteInstance finite_from_affine(const AffineInstance& inst,
                                  const std::vector<long long>& x,
                                  const std::vector<std::vector<Rat>>& points) {
  if (static_cast<int>(x.size()) != inst.n_x)
    throw std::invalid_argument("finite_from_affine: x has wrong dimension");
  FiniteInstance out;
  out.name = inst.name + "@discretized";
  out.seed = inst.seed;
  out.n_y = inst.n_y;
  out.y_space = inst.y_space;
  for (const auto& xi : points) {
    if (static_cast<int>(xi.size()) != inst.n_xi)
      throw std::invalid_argument("finite_from_affine: point has wrong dimension");
    Scenario sc;
    sc.objective.resize(inst.n_y);
    for (int i = 0; i < inst.n_y; ++i) {
      Rat c = inst.objective.c0[i];
      if (!inst.objective.C.empty())
        for (int l = 0; l < inst.n_xi; ++l) c += inst.objective.C[i][l] * xi[l];
      sc.objective[i] = c;
    }
    for (int r = 0; r < inst.m; ++r) {
      RatConstraint row;
      row.row.resize(inst.n_y);
      for (int i = 0; i < inst.n_y; ++i) {
        Rat v = rat_of(inst.B[r][i]);
        for (int l = 0; l < inst.n_xi; ++l) v += xi[l] * rat_of(inst.Bi[l][r][i]);
        row.row[i] = v;
      }
      Rat rhs = rat_of(inst.h[r]);
      for (int l = 0; l < inst.n_xi; ++l) rhs += rat_of(inst.H[r][l]) * xi[l];
      for (int i = 0; i < inst.n_x; ++i) {
        Rat a = rat_of(inst.A[r][i]);
        for (int l = 0; l < inst.n_xi; ++l) a += xi[l] * rat_of(inst.Ai[l][r][i]);
        rhs -= a * rat_of(x[i]);
      }
      row.sense = Sense::Ge;
      row.rhs = rhs;
      sc.constraints.push_back(std::move(row));
    }
    out.scenarios.push_back(std::move(sc));
  }
  return out;
}

}  // namespace kadapt
