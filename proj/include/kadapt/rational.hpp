#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace kadapt {

using Rat = mpq_class;
using Int = mpz_class;

inline Int int_of(long long v) {
  // mpz_class has no long long ctor; go through the string-free set_si path.
  Int z;
  if (v >= 0) {
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long long>(v));
  } else {
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long long>(-(v + 1)) + 1ULL);
    mpz_neg(z.get_mpz_t(), z.get_mpz_t());
  }
  return z;
}

inline Rat rat_of(long long v) { return Rat(int_of(v)); }

inline Rat rat_of(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(int_of(num));
  r /= Rat(int_of(den));
  return r;
}

// Parses "p", "-p" or "p/q" with an optional sign on either part.
// Rejects anything else, including zero denominators and decimal points.
Rat rat_from_string(const std::string& s);

// Renders "p" for integers, "p/q" otherwise, always with positive q.
std::string rat_to_string(const Rat& r);

inline bool rat_is_integral(const Rat& r) { return r.get_den() == 1; }

inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// Checked narrowing to int64.
long long to_int64(const Int& z);

// Objective values live in Q extended by +inf; +inf marks infeasibility, an
// explicit state, never a large surrogate number.
class Value {
public:
  Value() : inf_(false), q_(0) {}
  Value(Rat q) : inf_(false), q_(std::move(q)) {}
  Value(long long v) : inf_(false), q_(rat_of(v)) {}
  Value(int v) : inf_(false), q_(v) {}

  static Value infinity() {
    Value v;
    v.inf_ = true;
    return v;
  }

  bool is_infinite() const { return inf_; }

  const Rat& finite() const {
    if (inf_) throw std::logic_error("Value::finite() on +inf");
    return q_;
  }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.q_ == b.q_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.q_ < b.q_;
  }
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
  friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }

  std::string str() const { return inf_ ? "+inf" : rat_to_string(q_); }

private:
  bool inf_;
  Rat q_;
};

}  // namespace kadapt
