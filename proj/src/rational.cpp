#include "kadapt/rational.hpp"

#include <cctype>
#include <limits>

namespace kadapt {

namespace {

// Accepts [+-]?digits, returns false on anything else.
bool parse_integer_token(const std::string& s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  // mpz_set_str accepts the validated token directly.
  if (mpz_set_str(out.get_mpz_t(), s.c_str(), 10) != 0) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  Int num, den;
  if (slash == std::string::npos) {
    if (!parse_integer_token(s, num))
      throw std::invalid_argument("malformed rational: '" + s + "'");
    return Rat(num);
  }
  if (s.find('/', slash + 1) != std::string::npos ||
      !parse_integer_token(s.substr(0, slash), num) ||
      !parse_integer_token(s.substr(slash + 1), den))
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (den == 0)
    throw std::invalid_argument("zero denominator in rational: '" + s + "'");
  Rat r(num);
  r /= Rat(den);
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

long long to_int64(const Int& z) {
  static const Int kMin = int_of(std::numeric_limits<long long>::min());
  static const Int kMax = int_of(std::numeric_limits<long long>::max());
  if (z < kMin || z > kMax) throw std::overflow_error("integer out of int64 range");
  static_assert(sizeof(long) == 8, "mpz_get_si must cover the int64 range");
  return static_cast<long long>(mpz_get_si(z.get_mpz_t()));
}

}  // namespace kadapt
