#include "kadapt/yspace.hpp"

#include <algorithm>

namespace kadapt {

IntConstraint normalize(IntConstraint c) {
  if (c.sense == Sense::Le) {
    for (auto& v : c.row) v = -v;
    c.rhs = -c.rhs;
    c.sense = Sense::Ge;
  }
  return c;
}

Int YSpace::raw_box_size() const {
  Int total = 1;
  for (int i = 0; i < dim(); ++i) {
    if (upper[i] < lower[i]) return 0;
    total *= int_of(upper[i]) - int_of(lower[i]) + 1;
  }
  return total;
}

bool YSpace::in_box(const std::vector<long long>& y) const {
  if (static_cast<int>(y.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (y[i] < lower[i] || y[i] > upper[i]) return false;
  return true;
}

bool YSpace::satisfies_constraints(const std::vector<long long>& y) const {
  for (const auto& c : constraints) {
    __int128 dot = 0;
    for (std::size_t i = 0; i < c.row.size(); ++i)
      dot += static_cast<__int128>(c.row[i]) * y[i];
    if (c.sense == Sense::Eq ? dot != c.rhs : dot < c.rhs) return false;
  }
  return true;
}

bool YSpace::contains(const std::vector<long long>& y) const {
  if (explicit_mode())
    return std::find(explicit_points.begin(), explicit_points.end(), y) !=
           explicit_points.end();
  return in_box(y) && satisfies_constraints(y);
}

std::vector<std::vector<long long>> YSpace::enumerate_all(unsigned long long guard) const {
  std::vector<std::vector<long long>> out;
  enumerate(guard, [&](const std::vector<long long>& y) { out.push_back(y); });
  return out;
}

Int YSpace::count_points(unsigned long long guard) const {
  Int n = 0;
  enumerate(guard, [&](const std::vector<long long>&) { ++n; });
  return n;
}

void YSpace::check_guard(unsigned long long guard) const {
  Int limit;
  mpz_set_ui(limit.get_mpz_t(), guard);
  if (raw_box_size() > limit)
    throw GuardExceeded("second-stage box larger than enumeration guard (" +
                        raw_box_size().get_str() + " > " + limit.get_str() + ")");
}

}  // namespace kadapt
