#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcrystal {

// Exact arithmetic only; no floating point anywhere in the engine.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline long long to_ll(const Int& v) {
  if (v > (std::numeric_limits<long long>::max)() ||
      v < (std::numeric_limits<long long>::min)())
    throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<long long>(v);
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline std::string rat_str(const Rat& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) s += "/" + rat_den(r).str();
  return s;
}

// Integer extended by -infinity. Crystal statistics eps/phi take the value
// -infinity exactly on T-tokens.
struct ExtInt {
  bool finite = true;
  long long v = 0;

  ExtInt() = default;
  ExtInt(long long x) : finite(true), v(x) {}
  static ExtInt neg_inf() {
    ExtInt e;
    e.finite = false;
    return e;
  }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    if (a.finite != b.finite) return false;
    return !a.finite || a.v == b.v;
  }
  friend bool operator<(const ExtInt& a, const ExtInt& b) {
    if (!a.finite) return b.finite;
    if (!b.finite) return false;
    return a.v < b.v;
  }
  friend bool operator<=(const ExtInt& a, const ExtInt& b) { return a < b || a == b; }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return b <= a; }

  friend ExtInt operator+(const ExtInt& a, long long k) {
    return a.finite ? ExtInt(a.v + k) : neg_inf();
  }
  friend ExtInt max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

  // Requires finiteness; callers gate on it.
  long long value() const {
    if (!finite) throw std::logic_error("value() on -infinity");
    return v;
  }
  std::string str() const { return finite ? std::to_string(v) : "-inf"; }
};

}  // namespace qcrystal
