#include "kadapt/instance.hpp"

#include <cstdlib>

namespace kadapt {

namespace {

constexpr long long kMagnitudeCap = 1LL << 40;

void check_dims(std::vector<std::string>& issues, const std::string& where,
                std::size_t got, std::size_t want) {
  if (got != want)
    issues.push_back(where + ": expected " + std::to_string(want) +
                     " entries, got " + std::to_string(got));
}

void check_magnitude(std::vector<std::string>& issues, const std::string& where,
                     long long v) {
  if (std::llabs(v) > kMagnitudeCap)
    issues.push_back(where + ": coefficient magnitude exceeds 2^40");
}

void check_magnitude(std::vector<std::string>& issues, const std::string& where,
                     const Rat& v) {
  static const Int cap = int_of(kMagnitudeCap);
  if (abs(v.get_num()) > cap || v.get_den() > cap)
    issues.push_back(where + ": coefficient magnitude exceeds 2^40");
}

void check_yspace(std::vector<std::string>& issues, const YSpace& ys, int n_y) {
  if (ys.dim() != n_y)
    issues.push_back("y_space: box dimension " + std::to_string(ys.dim()) +
                     " does not match n_y=" + std::to_string(n_y));
  check_dims(issues, "y_space.upper", ys.upper.size(), ys.lower.size());
  for (int i = 0; i < ys.dim() && i < static_cast<int>(ys.upper.size()); ++i) {
    if (ys.lower[i] > ys.upper[i])
      issues.push_back("y_space: lower > upper in coordinate " + std::to_string(i));
    check_magnitude(issues, "y_space.lower", ys.lower[i]);
    check_magnitude(issues, "y_space.upper", ys.upper[i]);
  }
  for (const auto& c : ys.constraints) {
    check_dims(issues, "y_space constraint row", c.row.size(), n_y);
    for (auto v : c.row) check_magnitude(issues, "y_space constraint", v);
    check_magnitude(issues, "y_space constraint rhs", c.rhs);
  }
  for (const auto& p : ys.explicit_points) {
    check_dims(issues, "y_space explicit point", p.size(), n_y);
    if (static_cast<int>(p.size()) == n_y && !ys.in_box(p))
      issues.push_back("y_space: explicit point outside recorded box");
  }
}

}  // namespace

RatConstraint normalize(RatConstraint c) {
  if (c.sense == Sense::Le) {
    for (auto& v : c.row) v = -v;
    c.rhs = -c.rhs;
    c.sense = Sense::Ge;
  }
  return c;
}

bool ObjectiveSpec::depends_on_xi() const {
  for (const auto& row : C)
    for (const auto& v : row)
      if (v != 0) return true;
  return false;
}

std::string ValidationReport::joined() const {
  std::string out;
  for (const auto& s : issues) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

ValidationReport validate(const FiniteInstance& inst) {
  ValidationReport rep;
  auto& issues = rep.issues;
  if (inst.n_y <= 0) issues.push_back("n_y must be positive");
  if (inst.scenarios.empty()) issues.push_back("scenario list is empty");
  check_yspace(issues, inst.y_space, inst.n_y);
  for (int j = 0; j < inst.t(); ++j) {
    const auto& sc = inst.scenarios[j];
    const std::string where = "scenario " + std::to_string(j);
    check_dims(issues, where + " objective", sc.objective.size(), inst.n_y);
    for (const auto& v : sc.objective) check_magnitude(issues, where + " objective", v);
    for (const auto& c : sc.constraints) {
      check_dims(issues, where + " constraint row", c.row.size(), inst.n_y);
      for (const auto& v : c.row) check_magnitude(issues, where + " constraint", v);
      check_magnitude(issues, where + " constraint rhs", c.rhs);
    }
  }
  if (inst.generated && inst.name.empty())
    issues.push_back("generated instance is missing its generator name");
  return rep;
}

ValidationReport validate(const AffineInstance& inst) {
  ValidationReport rep;
  auto& issues = rep.issues;
  if (inst.n_x <= 0) issues.push_back("n_x must be positive");
  if (inst.n_y <= 0) issues.push_back("n_y must be positive");
  if (inst.n_xi <= 0) issues.push_back("n_xi must be positive");
  if (inst.m <= 0) issues.push_back("m must be positive");
  if (inst.X.empty()) issues.push_back("X must list at least one first-stage point");
  for (const auto& x : inst.X) {
    check_dims(issues, "X point", x.size(), inst.n_x);
    for (auto v : x) check_magnitude(issues, "X", v);
  }
  check_yspace(issues, inst.y_space, inst.n_y);

  auto check_matrix = [&](const std::string& where, const IntMatrix& M, int cols) {
    check_dims(issues, where + " rows", M.size(), inst.m);
    for (const auto& row : M) {
      check_dims(issues, where + " row", row.size(), cols);
      for (auto v : row) check_magnitude(issues, where, v);
    }
  };
  check_matrix("A", inst.A, inst.n_x);
  check_matrix("B", inst.B, inst.n_y);
  check_matrix("H", inst.H, inst.n_xi);
  check_dims(issues, "Ai", inst.Ai.size(), inst.n_xi);
  check_dims(issues, "Bi", inst.Bi.size(), inst.n_xi);
  for (std::size_t i = 0; i < inst.Ai.size(); ++i)
    check_matrix("Ai[" + std::to_string(i) + "]", inst.Ai[i], inst.n_x);
  for (std::size_t i = 0; i < inst.Bi.size(); ++i)
    check_matrix("Bi[" + std::to_string(i) + "]", inst.Bi[i], inst.n_y);
  check_dims(issues, "h", inst.h.size(), inst.m);
  for (auto v : inst.h) check_magnitude(issues, "h", v);

  check_dims(issues, "U_box.upper", inst.u_box.upper.size(), inst.u_box.lower.size());
  if (inst.u_box.dim() != inst.n_xi)
    issues.push_back("U_box dimension does not match n_xi");
  for (int i = 0; i < inst.u_box.dim() &&
                  i < static_cast<int>(inst.u_box.upper.size()); ++i) {
    if (inst.u_box.lower[i] > inst.u_box.upper[i])
      issues.push_back("U_box: lower > upper in coordinate " + std::to_string(i));
    check_magnitude(issues, "U_box.lower", inst.u_box.lower[i]);
    check_magnitude(issues, "U_box.upper", inst.u_box.upper[i]);
  }
  for (const auto& c : inst.u_box.constraints) {
    check_dims(issues, "U_box constraint row", c.row.size(), inst.n_xi);
    for (const auto& v : c.row) check_magnitude(issues, "U_box constraint", v);
    check_magnitude(issues, "U_box constraint rhs", c.rhs);
  }

  check_dims(issues, "objective.c0", inst.objective.c0.size(), inst.n_y);
  for (const auto& v : inst.objective.c0) check_magnitude(issues, "objective.c0", v);
  if (!inst.objective.C.empty()) {
    check_dims(issues, "objective.C rows", inst.objective.C.size(), inst.n_y);
    for (const auto& row : inst.objective.C) {
      check_dims(issues, "objective.C row", row.size(), inst.n_xi);
      for (const auto& v : row) check_magnitude(issues, "objective.C", v);
    }
  }
  if (inst.generated && inst.name.empty())
    issues.push_back("generated instance is missing its generator name");
  return rep;
}

}  // namespace kadapt
