#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "qcrystal/errors.hpp"
#include "qcrystal/numeric.hpp"

namespace qcrystal {

// Laurent polynomial in one variable q with integer coefficients, kept in
// normal form: exponent-ordered map, no zero coefficients stored.
class LaurentPoly {
 public:
  using Map = std::map<long long, Int>;

  LaurentPoly() = default;
  explicit LaurentPoly(Int constant) {
    if (constant != 0) c_[0] = std::move(constant);
  }
  LaurentPoly(long long coeff, long long exp) {
    if (coeff != 0) c_[exp] = coeff;
  }

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return LaurentPoly(Int(1)); }
  static LaurentPoly q_power(long long e) { return LaurentPoly(1, e); }

  const Map& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Int coeff(long long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Int(0) : it->second;
  }
  long long min_exp() const { return c_.begin()->first; }
  long long max_exp() const { return c_.rbegin()->first; }

  void add_term(long long e, const Int& v) {
    if (v == 0) return;
    Int& slot = c_[e];
    slot += v;
    if (slot == 0) c_.erase(e);
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (auto& [e, v] : b.c_) r.add_term(e, v);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (auto& [e, v] : a.c_) r.c_[e] = -v;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + (-b);
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ea, va] : a.c_)
      for (auto& [eb, vb] : b.c_) r.add_term(ea + eb, va * vb);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.c_ < b.c_;
  }

  // q -> q^{-1}
  LaurentPoly bar() const {
    LaurentPoly r;
    for (auto& [e, v] : c_) r.c_[-e] = v;
    return r;
  }

  bool is_regular_at_zero() const { return c_.empty() || min_exp() >= 0; }
  Int eval_at_zero() const {
    if (!is_regular_at_zero()) throw NotRegular(str());
    return coeff(0);
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, v] : c_) {
      Int av = v < 0 ? Int(-v) : v;
      std::string term;
      if (e == 0) {
        term = av.str();
      } else {
        if (av != 1) term = av.str() + "*";
        term += (e == 1) ? "q" : "q^" + std::to_string(e);
      }
      if (first) {
        out = (v < 0 ? "-" : "") + term;
        first = false;
      } else {
        out += (v < 0 ? " - " : " + ") + term;
      }
    }
    return out;
  }

  static LaurentPoly parse(const std::string& s);

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [e, v] : c_) j[std::to_string(e)] = to_ll(v);
    return j;
  }
  static LaurentPoly from_json(const nlohmann::json& j) {
    LaurentPoly p;
    for (auto it = j.begin(); it != j.end(); ++it)
      p.add_term(std::stoll(it.key()), Int(it.value().get<long long>()));
    return p;
  }

 private:
  Map c_;
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline Int parse_int(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  size_t digits = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits) throw ParseFailure("expected integer in '" + s + "'");
  return Int(s.substr(start, i - start));
}

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const std::string& s) {
  LaurentPoly p;
  size_t i = 0;
  detail::skip_ws(s, i);
  if (i < s.size() && s[i] == '0') {
    size_t j = i + 1;
    detail::skip_ws(s, j);
    if (j == s.size()) return p;
  }
  bool first = true;
  while (true) {
    detail::skip_ws(s, i);
    if (i >= s.size()) break;
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (first) {
        if (s[i] == '-') sign = -1;
        ++i;
      } else {
        sign = (s[i] == '-') ? -1 : 1;
        ++i;
      }
    } else if (!first) {
      throw ParseFailure("expected + or - in '" + s + "'");
    }
    detail::skip_ws(s, i);
    Int coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = detail::parse_int(s, i);
      have_coeff = true;
      detail::skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        detail::skip_ws(s, i);
      }
    }
    long long exp = 0;
    if (i < s.size() && s[i] == 'q') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        exp = to_ll(detail::parse_int(s, i));
      }
    } else if (!have_coeff) {
      throw ParseFailure("expected term in '" + s + "'");
    }
    p.add_term(exp, sign * coeff);
    first = false;
  }
  return p;
}

// Exact division; throws on nonzero remainder. Used only where divisibility
// is guaranteed (balanced q-binomials). An exact quotient has its exponents
// between min_exp(num) - min_exp(den) and max_exp(num) - max_exp(den), so
// plain descending long division over that window terminates.
inline LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw Error("division by zero Laurent polynomial");
  if (num.is_zero()) return LaurentPoly::zero();
  const long long qmin = num.min_exp() - den.min_exp();
  const long long dtop = den.max_exp();
  const Int dlead = den.coeff(dtop);
  LaurentPoly rem = num;
  LaurentPoly quot;
  while (!rem.is_zero()) {
    const long long rtop = rem.max_exp();
    const Int rlead = rem.coeff(rtop);
    const long long shift = rtop - dtop;
    if (shift < qmin || rlead % dlead != 0) throw Error("non-exact Laurent division");
    LaurentPoly term;
    term.add_term(shift, rlead / dlead);
    quot = quot + term;
    rem = rem - term * den;
    if (!rem.is_zero() && rem.max_exp() >= rtop)
      throw Error("Laurent division failed to reduce degree");
  }
  return quot;
}

// Balanced q-integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}; [-n] = -[n].
inline LaurentPoly q_int(long long n) {
  LaurentPoly p;
  if (n == 0) return p;
  long long an = n > 0 ? n : -n;
  for (long long e = an - 1; e >= 1 - an; e -= 2) p.add_term(e, n > 0 ? 1 : -1);
  return p;
}

inline LaurentPoly q_factorial(long long n) {
  LaurentPoly p = LaurentPoly::one();
  for (long long k = 2; k <= n; ++k) p = p * q_int(k);
  return p;
}

// Balanced q-binomial [m choose t] for any integer m and t >= 0, via the
// product formula [m][m-1]...[m-t+1]/[t]!.
inline LaurentPoly q_binomial(long long m, long long t) {
  if (t < 0) throw Error("q_binomial needs t >= 0");
  if (t == 0) return LaurentPoly::one();
  LaurentPoly num = LaurentPoly::one();
  for (long long s = 0; s < t; ++s) {
    if (m - s == 0) return LaurentPoly::zero();
    num = num * q_int(m - s);
  }
  return divide_exact(num, q_factorial(t));
}

}  // namespace qcrystal
