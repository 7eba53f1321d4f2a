#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcrystal/errors.hpp"
#include "qcrystal/laurent.hpp"

namespace qcrystal::sl2 {

// Modified quantized enveloping algebra of sl2 in its canonical basis. The
// basis consists of the monomials E^(a)F^(b)1_n with n <= b-a (family A) and
// F^(b)E^(a)1_n with n >= b-a (family B), glued along n = b-a where the two
// monomials coincide; the overlap is stored as family A.

enum class Family : char { A = 'A', B = 'B' };

struct Monomial {
  Family fam = Family::A;
  int a = 0;  // E divided power
  int b = 0;  // F divided power
  long long n = 0;

  Monomial() = default;
  Monomial(Family f, int aa, int bb, long long nn) : fam(f), a(aa), b(bb), n(nn) {
    if (a < 0 || b < 0) throw Error("negative divided power");
    if (a == 0 || b == 0) {
      // one-letter words carry no family distinction
      fam = n <= (long long)b - a ? Family::A : Family::B;
      return;
    }
    if (n == (long long)b - a) fam = Family::A;  // overlap normalization
    if (fam == Family::A && n > (long long)b - a)
      throw Error("non-canonical family A index " + str());
    if (fam == Family::B && n < (long long)b - a)
      throw Error("non-canonical family B index " + str());
  }

  long long right_weight() const { return n; }
  long long left_weight() const { return n + 2 * ((long long)a - b); }

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.fam == y.fam && x.a == y.a && x.b == y.b && x.n == y.n;
  }
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.n != y.n) return x.n < y.n;
    if (x.a + x.b != y.a + y.b) return x.a + x.b < y.a + y.b;
    if (x.fam != y.fam) return x.fam == Family::A;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }

  std::string str() const {
    auto pw = [](const char* g, int k) {
      return k == 0 ? std::string() : std::string(g) + "(" + std::to_string(k) + ")";
    };
    std::string body = fam == Family::A ? pw("E", a) + pw("F", b) : pw("F", b) + pw("E", a);
    return body + "1(" + std::to_string(n) + ")";
  }

  static Monomial parse(const std::string& s);
};

inline Monomial Monomial::parse(const std::string& s) {
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto number = [&]() -> long long {
    skip();
    if (i >= s.size() || s[i] != '(') throw ParseFailure("expected ( in '" + s + "'");
    ++i;
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || i >= s.size() || s[i] != ')')
      throw ParseFailure("expected integer) in '" + s + "'");
    long long v = std::stoll(s.substr(start, i - start));
    ++i;
    return v;
  };
  int a = 0, b = 0;
  bool saw_e = false, saw_f = false, e_first = false;
  for (;;) {
    skip();
    if (i >= s.size()) throw ParseFailure("missing idempotent in '" + s + "'");
    char c = s[i];
    if (c == 'E') {
      ++i;
      if (saw_e) throw ParseFailure("duplicate E in '" + s + "'");
      saw_e = true;
      if (!saw_f) e_first = true;
      long long v = number();
      if (v < 0) throw ParseFailure("negative power");
      a = (int)v;
    } else if (c == 'F') {
      ++i;
      if (saw_f) throw ParseFailure("duplicate F in '" + s + "'");
      saw_f = true;
      long long v = number();
      if (v < 0) throw ParseFailure("negative power");
      b = (int)v;
    } else if (c == '1') {
      ++i;
      long long n = number();
      skip();
      if (i != s.size()) throw ParseFailure("trailing input in '" + s + "'");
      Family fam = Family::A;
      if (saw_e && saw_f)
        fam = e_first ? Family::A : Family::B;
      else if (saw_e)
        fam = n <= -(long long)a ? Family::A : Family::B;
      else
        fam = n <= (long long)b ? Family::A : Family::B;
      return Monomial(fam, a, b, n);
    } else {
      throw ParseFailure("unexpected '" + std::string(1, c) + "' in '" + s + "'");
    }
  }
}

using AlgElement = std::map<Monomial, LaurentPoly>;

inline void add_to(AlgElement& x, const Monomial& m, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = x.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
  }
}

inline AlgElement unit(const Monomial& m) {
  AlgElement x;
  x[m] = LaurentPoly::one();
  return x;
}
inline AlgElement idempotent(long long n) { return unit(Monomial(Family::A, 0, 0, n)); }

inline std::string alg_str(const AlgElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (auto& [m, c] : x) {
    if (!out.empty()) out += " + ";
    out += "[" + c.str() + "]*" + m.str();
  }
  return out;
}

// Rewrite a raw monomial word (same shape as a Monomial but without the
// canonicality constraint) into the canonical basis, one commutation step:
//   E^(a)F^(b)1_n = sum_t qbin(a-b+n, t)   F^(b-t)E^(a-t)1_n
//   F^(b)E^(a)1_n = sum_t qbin(b-a-n, t)   E^(a-t)F^(b-t)1_n
inline void raw_to_canonical(AlgElement& out, Family fam, int a, int b, long long n,
                             const LaurentPoly& coeff) {
  if (coeff.is_zero()) return;
  if (fam == Family::A) {
    if (n <= (long long)b - a) {
      add_to(out, Monomial(Family::A, a, b, n), coeff);
      return;
    }
    for (int t = 0; t <= std::min(a, b); ++t) {
      LaurentPoly c = coeff * q_binomial(a - b + n, t);
      add_to(out, Monomial(Family::B, a - t, b - t, n), c);
    }
  } else {
    if (n >= (long long)b - a) {
      add_to(out, Monomial(n == (long long)b - a ? Family::A : Family::B, a, b, n), coeff);
      return;
    }
    for (int t = 0; t <= std::min(a, b); ++t) {
      LaurentPoly c = coeff * q_binomial(b - a - n, t);
      add_to(out, Monomial(Family::A, a - t, b - t, n), c);
    }
  }
}

inline AlgElement add(const AlgElement& x, const AlgElement& y) {
  AlgElement r = x;
  for (auto& [m, c] : y) add_to(r, m, c);
  return r;
}

inline AlgElement negate(const AlgElement& x) {
  AlgElement r;
  for (auto& [m, c] : x) r[m] = -c;
  return r;
}

inline AlgElement scale(const AlgElement& x, const LaurentPoly& c) {
  AlgElement r;
  for (auto& [m, v] : x) add_to(r, m, v * c);
  return r;
}

// keep the monomials with the given left weight (the idempotent acting from
// the left)
inline AlgElement project_left(long long n, const AlgElement& x) {
  AlgElement r;
  for (auto& [m, c] : x)
    if (m.left_weight() == n) r[m] = c;
  return r;
}

// E^(k) * x
inline AlgElement mul_E(int k, const AlgElement& x) {
  if (k == 0) return x;
  AlgElement out;
  for (auto& [m, c] : x) {
    if (m.fam == Family::A) {
      // E^(k) E^(a) F^(b) 1_n
      raw_to_canonical(out, Family::A, k + m.a, m.b, m.n, c * q_binomial(k + m.a, k));
    } else {
      // E^(k) F^(b) E^(a) 1_n: commute past F at weight n + 2a
      for (int t = 0; t <= std::min(k, m.b); ++t) {
        LaurentPoly cc = c * q_binomial(k - m.b + m.n + 2 * m.a, t) *
                         q_binomial(k - t + m.a, m.a);
        raw_to_canonical(out, Family::B, k - t + m.a, m.b - t, m.n, cc);
      }
    }
  }
  return out;
}

// F^(k) * x
inline AlgElement mul_F(int k, const AlgElement& x) {
  if (k == 0) return x;
  AlgElement out;
  for (auto& [m, c] : x) {
    if (m.fam == Family::B) {
      // F^(k) F^(b) E^(a) 1_n
      raw_to_canonical(out, Family::B, m.a, k + m.b, m.n, c * q_binomial(k + m.b, k));
    } else {
      // F^(k) E^(a) F^(b) 1_n: commute past E at weight n - 2b
      for (int t = 0; t <= std::min(k, m.a); ++t) {
        LaurentPoly cc = c * q_binomial(k - m.a - m.n + 2 * m.b, t) *
                         q_binomial(k - t + m.b, m.b);
        raw_to_canonical(out, Family::A, m.a - t, k - t + m.b, m.n, cc);
      }
    }
  }
  return out;
}

inline AlgElement multiply(const AlgElement& x, const AlgElement& y) {
  AlgElement out;
  for (auto& [m, c] : x) {
    AlgElement part = project_left(m.n, y);
    if (part.empty()) continue;
    if (m.fam == Family::A)
      part = mul_E(m.a, mul_F(m.b, part));
    else
      part = mul_F(m.b, mul_E(m.a, part));
    out = add(out, scale(part, c));
  }
  return out;
}

// * is the anti-automorphism fixing E, F and inverting q^h; omega swaps E
// and F and inverts q^h. Both act on canonical indices as permutations.
inline Monomial star(const Monomial& m) {
  Family f = m.fam == Family::A ? Family::B : Family::A;
  return Monomial(f, m.a, m.b, -m.n + 2 * ((long long)m.b - m.a));
}

inline Monomial omega(const Monomial& m) {
  Family f = m.fam == Family::A ? Family::B : Family::A;
  return Monomial(f, m.b, m.a, -m.n);
}

inline AlgElement star(const AlgElement& x) {
  AlgElement r;
  for (auto& [m, c] : x) r[star(m)] = c;
  return r;
}

inline AlgElement omega(const AlgElement& x) {
  AlgElement r;
  for (auto& [m, c] : x) r[omega(m)] = c;
  return r;
}

// ---------------------------------------------------------------------------
// Module actions. A module exposes its weights and the divided-power action;
// tensor products act through the coproduct
//   D(E^(n)) = sum_{r+s=n} q^{-rs} E^(r) (x) E^(s) t^{-r}
//   D(F^(n)) = sum_{r+s=n} q^{-rs} F^(r) t^{s} (x) F^(s)
// (t = q^h). The reversed convention uses the flipped coproduct.

using Vec = std::vector<LaurentPoly>;

struct Term {
  int idx;
  LaurentPoly c;
};

class Module {
 public:
  virtual ~Module() = default;
  virtual int dim() const = 0;
  virtual long long wt(int idx) const = 0;
  virtual std::vector<Term> act_E(int k, int idx) const = 0;
  virtual std::vector<Term> act_F(int k, int idx) const = 0;
};

// V(N): v_k = F^(k) v_0, E v_k = [N-k+1] v_{k-1}, F v_k = [k+1] v_{k+1}
class IrredHW : public Module {
 public:
  explicit IrredHW(int N) : N_(N) {}
  int dim() const override { return N_ + 1; }
  long long wt(int idx) const override { return N_ - 2 * idx; }
  std::vector<Term> act_E(int k, int idx) const override {
    if (idx - k < 0) return {};
    return {{idx - k, q_binomial(N_ - idx + k, k)}};
  }
  std::vector<Term> act_F(int k, int idx) const override {
    if (idx + k > N_) return {};
    return {{idx + k, q_binomial(idx + k, k)}};
  }

 private:
  int N_;
};

// V(-mu) as the omega-twist of V(mu): w_k has weight 2k - mu, E acts as the
// untwisted F and vice versa.
class LowestTwist : public Module {
 public:
  explicit LowestTwist(int mu) : mu_(mu) {}
  int dim() const override { return mu_ + 1; }
  long long wt(int idx) const override { return 2 * idx - mu_; }
  std::vector<Term> act_E(int k, int idx) const override {
    if (idx + k > mu_) return {};
    return {{idx + k, q_binomial(idx + k, k)}};
  }
  std::vector<Term> act_F(int k, int idx) const override {
    if (idx - k < 0) return {};
    return {{idx - k, q_binomial(mu_ - idx + k, k)}};
  }

 private:
  int mu_;
};

enum class Coproduct { Lower, Reversed };
inline Coproduct g_coproduct = Coproduct::Lower;

class TensorModule : public Module {
 public:
  TensorModule(const Module& a, const Module& b) : a_(a), b_(b) {}
  int dim() const override { return a_.dim() * b_.dim(); }
  long long wt(int idx) const override {
    return a_.wt(idx / b_.dim()) + b_.wt(idx % b_.dim());
  }
  std::vector<Term> act_E(int k, int idx) const override {
    const int p = idx / b_.dim(), q = idx % b_.dim();
    std::vector<Term> out;
    for (int r = 0; r <= k; ++r) {
      const int s = k - r;
      LaurentPoly twist =
          g_coproduct == Coproduct::Lower
              ? LaurentPoly(1, -(long long)r * s - r * b_.wt(q))   // E^(s) t^{-r} right
              : LaurentPoly(1, -(long long)r * s - s * a_.wt(p));  // E^(r) t^{-s} left
      for (auto& ta : a_.act_E(r, p))
        for (auto& tb : b_.act_E(s, q)) {
          LaurentPoly c = twist * ta.c * tb.c;
          out.push_back({ta.idx * b_.dim() + tb.idx, std::move(c)});
        }
    }
    return out;
  }
  std::vector<Term> act_F(int k, int idx) const override {
    const int p = idx / b_.dim(), q = idx % b_.dim();
    std::vector<Term> out;
    for (int r = 0; r <= k; ++r) {
      const int s = k - r;
      LaurentPoly twist =
          g_coproduct == Coproduct::Lower
              ? LaurentPoly(1, -(long long)r * s + s * a_.wt(p))   // F^(r) t^{s} left
              : LaurentPoly(1, -(long long)r * s + r * b_.wt(q));  // F^(s) t^{r} right
      for (auto& ta : a_.act_F(r, p))
        for (auto& tb : b_.act_F(s, q)) {
          LaurentPoly c = twist * ta.c * tb.c;
          out.push_back({ta.idx * b_.dim() + tb.idx, std::move(c)});
        }
    }
    return out;
  }

 private:
  const Module& a_;
  const Module& b_;
};

inline Vec zero_vec(const Module& m) { return Vec(m.dim()); }

inline Vec apply_E(const Module& mod, int k, const Vec& v) {
  Vec out = zero_vec(mod);
  for (int i = 0; i < mod.dim(); ++i) {
    if (v[i].is_zero()) continue;
    for (auto& t : mod.act_E(k, i)) out[t.idx] += v[i] * t.c;
  }
  return out;
}

inline Vec apply_F(const Module& mod, int k, const Vec& v) {
  Vec out = zero_vec(mod);
  for (int i = 0; i < mod.dim(); ++i) {
    if (v[i].is_zero()) continue;
    for (auto& t : mod.act_F(k, i)) out[t.idx] += v[i] * t.c;
  }
  return out;
}

inline Vec apply_idempotent(const Module& mod, long long n, const Vec& v) {
  Vec out = v;
  for (int i = 0; i < mod.dim(); ++i)
    if (mod.wt(i) != n) out[i] = LaurentPoly::zero();
  return out;
}

inline Vec apply_monomial(const Module& mod, const Monomial& m, const Vec& v) {
  Vec x = apply_idempotent(mod, m.n, v);
  if (m.fam == Family::A) {
    x = apply_F(mod, m.b, x);
    x = apply_E(mod, m.a, x);
  } else {
    x = apply_E(mod, m.a, x);
    x = apply_F(mod, m.b, x);
  }
  return x;
}

inline Vec apply_element(const Module& mod, const AlgElement& x, const Vec& v) {
  Vec out = zero_vec(mod);
  for (auto& [m, c] : x) {
    Vec part = apply_monomial(mod, m, v);
    for (int i = 0; i < mod.dim(); ++i)
      if (!part[i].is_zero()) out[i] += part[i] * c;
  }
  return out;
}

inline bool vec_is_zero(const Vec& v) {
  for (auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

struct PolyMatrix {
  int rows = 0, cols = 0;
  std::vector<LaurentPoly> m;
  LaurentPoly& at(int r, int c) { return m[(size_t)r * cols + c]; }
  const LaurentPoly& at(int r, int c) const { return m[(size_t)r * cols + c]; }
  bool is_zero() const {
    for (auto& x : m)
      if (!x.is_zero()) return false;
    return true;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.m == b.m;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix r;
    r.rows = a.rows;
    r.cols = b.cols;
    r.m.assign((size_t)r.rows * r.cols, LaurentPoly::zero());
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
      }
    return r;
  }
};

inline PolyMatrix act_matrix(const Module& mod, const AlgElement& x) {
  PolyMatrix out;
  out.rows = out.cols = mod.dim();
  out.m.assign((size_t)out.rows * out.cols, LaurentPoly::zero());
  for (int c = 0; c < mod.dim(); ++c) {
    Vec e = zero_vec(mod);
    e[c] = LaurentPoly::one();
    Vec col = apply_element(mod, x, e);
    for (int r = 0; r < mod.dim(); ++r) out.at(r, c) = col[r];
  }
  return out;
}

inline PolyMatrix act_V(const AlgElement& x, int N) {
  IrredHW mod(N);
  return act_matrix(mod, x);
}

inline PolyMatrix act_tensor(const AlgElement& x, int lambda, int mu) {
  IrredHW a(lambda);
  LowestTwist b(mu);
  TensorModule t(a, b);
  return act_matrix(t, x);
}

inline Vec cyclic_vector(const Module& mod) {
  Vec v = zero_vec(mod);
  v[0] = LaurentPoly::one();  // u_lambda (x) u_{-mu} sits at index (0,0)
  return v;
}

// G(b) u_{lambda,-mu} for every canonical index with nonzero image; the
// vectors form the canonical basis of the tensor module, and each reduces at
// q = 0 to the indicator of one pure tensor (checked here).
struct BasisVector {
  Monomial index;
  Vec vec;
  int tensor_position;  // p * (mu+1) + k of the q = 0 indicator
};

inline std::vector<BasisVector> canonical_module_basis(int lambda, int mu) {
  if (lambda < 0 || mu < 0) throw Error("canonical_module_basis needs dominant pair");
  IrredHW va(lambda);
  LowestTwist vb(mu);
  TensorModule mod(va, vb);
  const long long n = (long long)lambda - mu;
  std::vector<BasisVector> out;
  std::vector<bool> seen(mod.dim(), false);
  Vec u = cyclic_vector(mod);
  const int bound = lambda + mu + 2;
  for (int a = 0; a <= bound; ++a)
    for (int b = 0; b <= bound; ++b) {
      Family fam = n <= (long long)b - a ? Family::A : Family::B;
      Monomial m(fam, a, b, n);
      Vec v = apply_monomial(mod, m, u);
      if (vec_is_zero(v)) continue;
      int pos = -1;
      for (int i = 0; i < mod.dim(); ++i) {
        if (!v[i].is_regular_at_zero())
          throw Error("canonical vector not regular at q=0: " + m.str());
        Int c0 = v[i].eval_at_zero();
        if (c0 == 0) continue;
        if (c0 != 1 || pos >= 0)
          throw Error("canonical vector has no indicator shadow: " + m.str());
        pos = i;
      }
      if (pos < 0) throw Error("canonical vector vanishes at q=0: " + m.str());
      if (seen[pos]) throw Error("duplicate shadow position: " + m.str());
      seen[pos] = true;
      out.push_back({m, std::move(v), pos});
    }
  if ((int)out.size() != (lambda + 1) * (mu + 1))
    throw Error("canonical basis count " + std::to_string(out.size()) + " != " +
                std::to_string((lambda + 1) * (mu + 1)));
  return out;
}

// Smallest dominant pair (lambda, mu) with lambda - mu = n(b) on which G(b)
// acts without killing the cyclic vector.
inline std::pair<int, int> minimal_membership(const Monomial& m) {
  const long long n = m.right_weight();
  for (int mu = (int)std::max(0LL, -n);; ++mu) {
    int lambda = (int)(n + mu);
    IrredHW va(lambda);
    LowestTwist vb(mu);
    TensorModule mod(va, vb);
    Vec v = apply_monomial(mod, m, cyclic_vector(mod));
    if (!vec_is_zero(v)) return {lambda, mu};
    if (mu > 4 * (m.a + m.b) + (int)std::llabs(n) + 8)
      throw Error("minimal membership scan runaway for " + m.str());
  }
}

// Cell label: the smallest N with a nonzero action on V(N).
inline int cell_of(const Monomial& m) {
  const long long lo = std::max(std::llabs(m.right_weight()), std::llabs(m.left_weight()));
  for (long long N = lo;; N += 2) {
    AlgElement x = unit(m);
    if (!act_V(x, (int)N).is_zero()) return (int)N;
    if (N > lo + 4 * (m.a + m.b) + 8) throw Error("cell scan runaway for " + m.str());
  }
}

// ---------------------------------------------------------------------------
// Coproduct blocks and structure constants.

using BlockKey = std::pair<Monomial, Monomial>;
using Block = std::map<BlockKey, LaurentPoly>;

inline void block_accumulate(Block& out, const AlgElement& left, const AlgElement& right,
                             const LaurentPoly& coeff) {
  for (auto& [ml, cl] : left)
    for (auto& [mr, cr] : right) {
      LaurentPoly c = coeff * cl * cr;
      if (c.is_zero()) continue;
      auto [it, fresh] = out.emplace(BlockKey{ml, mr}, c);
      if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
}

// The (n1, n2)-block of D(x), expanded in canonical (x) canonical indices.
inline Block coproduct_block(const AlgElement& x, long long n1, long long n2) {
  Block out;
  for (auto& [m, coeff] : x) {
    if (m.n != n1 + n2) continue;
    for (int c = 0; c <= m.a; ++c) {
      const int d = m.a - c;
      for (int r = 0; r <= m.b; ++r) {
        const int s = m.b - r;
        long long twist;
        AlgElement left, right;
        if (g_coproduct == Coproduct::Lower) {
          if (m.fam == Family::A) {
            // E^(c)F^(r) t^s 1_{n1}  (x)  E^(d) t^{-c} F^(s) 1_{n2}
            twist = -(long long)c * d - (long long)r * s + (long long)s * n1 -
                    (long long)c * (n2 - 2 * s);
            raw_to_canonical(left, Family::A, c, r, n1, LaurentPoly::one());
            raw_to_canonical(right, Family::A, d, s, n2, LaurentPoly::one());
          } else {
            // F^(r) t^s E^(c) 1_{n1}  (x)  F^(s) E^(d) t^{-c} 1_{n2}
            twist = -(long long)c * d - (long long)r * s +
                    (long long)s * (n1 + 2 * c) - (long long)c * n2;
            raw_to_canonical(left, Family::B, c, r, n1, LaurentPoly::one());
            raw_to_canonical(right, Family::B, d, s, n2, LaurentPoly::one());
          }
        } else {
          // flipped coproduct: t-twists change sides
          if (m.fam == Family::A) {
            // E^(c) t^{-d} F^(r) 1_{n1}  (x)  E^(d) F^(s) t^{r} 1_{n2}
            twist = -(long long)c * d - (long long)r * s -
                    (long long)d * (n1 - 2 * r) + (long long)r * n2;
            raw_to_canonical(left, Family::A, c, r, n1, LaurentPoly::one());
            raw_to_canonical(right, Family::A, d, s, n2, LaurentPoly::one());
          } else {
            // F^(r) E^(c) t^{-d} 1_{n1}  (x)  F^(s) t^{r} E^(d) 1_{n2}
            twist = -(long long)c * d - (long long)r * s - (long long)d * n1 +
                    (long long)r * (n2 + 2 * d);
            raw_to_canonical(left, Family::B, c, r, n1, LaurentPoly::one());
            raw_to_canonical(right, Family::B, d, s, n2, LaurentPoly::one());
          }
        }
        block_accumulate(out, left, right, LaurentPoly(1, twist));
      }
    }
  }
  return out;
}

// Structure constants m(b,c)_a: the (b,c)-coefficient of D(G(a)) over the
// certified candidate set, with a two-power safety margin scanned for
// vanishing beyond it.
struct SCEntry {
  Monomial b, c;
  std::pair<int, int> membership_b{0, 0};  // minimal (lambda, mu) for b
  std::pair<int, int> membership_c{0, 0};
  int lambda = 0, mu = 0;  // combined pair certifying the candidate set
  int margin = 2;
  std::map<Monomial, LaurentPoly> coeffs;

  nlohmann::json to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (auto& [a, poly] : coeffs)
      entries.push_back({{"a", a.str()}, {"poly", poly.str()}});
    return nlohmann::json{
        {"b", b.str()},
        {"c", c.str()},
        {"entries", entries},
        {"certificate",
         nlohmann::json{{"lambda", lambda},
                        {"mu", mu},
                        {"membership_b", {membership_b.first, membership_b.second}},
                        {"membership_c", {membership_c.first, membership_c.second}},
                        {"margin", margin}}}};
  }
};

// canonical indices with the given left and right weights, listed by
// increasing total divided power
inline Monomial biweight_index(long long left, long long right, int j) {
  const long long diff = left - right;
  if (diff % 2 != 0) throw Error("incompatible bi-weight");
  const long long k = diff / 2;  // a - b
  int a0 = (int)std::max(k, 0LL);
  int b0 = (int)std::max(-k, 0LL);
  int a = a0 + j, b = b0 + j;
  Family fam = right <= (long long)b - a ? Family::A : Family::B;
  return Monomial(fam, a, b, right);
}

inline LaurentPoly block_coeff(const Monomial& a, const Monomial& b, const Monomial& c) {
  Block blk = coproduct_block(unit(a), b.n, c.n);
  auto it = blk.find({b, c});
  return it == blk.end() ? LaurentPoly::zero() : it->second;
}

inline SCEntry structure_constants(const Monomial& b, const Monomial& c) {
  SCEntry out;
  out.b = b;
  out.c = c;
  out.membership_b = minimal_membership(b);
  out.membership_c = minimal_membership(c);
  out.lambda = out.membership_b.first + out.membership_c.first;
  out.mu = out.membership_b.second + out.membership_c.second;

  const long long na = b.n + c.n;
  const long long wa = b.left_weight() + c.left_weight();
  if ((wa - na) % 2 != 0) return out;

  IrredHW va(out.lambda);
  LowestTwist vb(out.mu);
  TensorModule mod(va, vb);
  Vec u = cyclic_vector(mod);

  // candidate set: indices acting nonzero on the combined cyclic vector;
  // membership is a contiguous range in the total power
  int last_member = -1;
  for (int j = 0;; ++j) {
    Monomial cand = biweight_index(wa, na, j);
    Vec v = apply_monomial(mod, cand, u);
    if (vec_is_zero(v)) break;
    last_member = j;
    LaurentPoly coeff = block_coeff(cand, b, c);
    if (!coeff.is_zero()) out.coeffs[cand] = std::move(coeff);
    if (j > out.lambda + out.mu + 4) throw Error("candidate scan runaway");
  }
  for (int j = last_member + 1; j <= last_member + out.margin; ++j) {
    Monomial cand = biweight_index(wa, na, j);
    if (!block_coeff(cand, b, c).is_zero())
      throw MarginViolation("nonzero coefficient outside candidate set at " + cand.str());
  }
  return out;
}

// b* . c* in the dual basis: the same table read as a product of dual
// functionals.
inline std::map<Monomial, LaurentPoly> dual_product(const Monomial& b, const Monomial& c) {
  return structure_constants(b, c).coeffs;
}

// expand a linear combination of dual basis vectors times another dual basis
// vector
inline std::map<Monomial, LaurentPoly> dual_product_left(
    const std::map<Monomial, LaurentPoly>& x, const Monomial& d) {
  std::map<Monomial, LaurentPoly> out;
  for (auto& [m, c] : x)
    for (auto& [a, v] : dual_product(m, d)) {
      auto [it, fresh] = out.emplace(a, c * v);
      if (!fresh) {
        it->second += c * v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

inline std::map<Monomial, LaurentPoly> dual_product_right(
    const Monomial& a, const std::map<Monomial, LaurentPoly>& x) {
  std::map<Monomial, LaurentPoly> out;
  for (auto& [m, c] : x)
    for (auto& [e, v] : dual_product(a, m)) {
      auto [it, fresh] = out.emplace(e, c * v);
      if (!fresh) {
        it->second += c * v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

// End-to-end oracle: G(a) acting on u_{l1,-m1} (x) u_{l2,-m2} through the
// module action must equal the coproduct-block expansion applied factorwise.
inline bool verify_coproduct_action(const Monomial& a, int l1, int m1, int l2, int m2,
                                    std::string* diff = nullptr) {
  IrredHW va1(l1);
  LowestTwist vb1(m1);
  TensorModule t1(va1, vb1);
  IrredHW va2(l2);
  LowestTwist vb2(m2);
  TensorModule t2(va2, vb2);
  TensorModule four(t1, t2);

  Vec u = zero_vec(four);
  u[0] = LaurentPoly::one();
  Vec lhs = apply_monomial(four, a, u);

  Vec rhs = zero_vec(four);
  Block blk = coproduct_block(unit(a), (long long)l1 - m1, (long long)l2 - m2);
  for (auto& [key, coeff] : blk) {
    Vec v1 = apply_monomial(t1, key.first, cyclic_vector(t1));
    Vec v2 = apply_monomial(t2, key.second, cyclic_vector(t2));
    for (int i = 0; i < t1.dim(); ++i) {
      if (v1[i].is_zero()) continue;
      for (int j = 0; j < t2.dim(); ++j) {
        if (v2[j].is_zero()) continue;
        rhs[i * t2.dim() + j] += coeff * v1[i] * v2[j];
      }
    }
  }

  if (lhs == rhs) return true;
  if (diff) {
    *diff = "mismatch for " + a.str() + " on (" + std::to_string(l1) + "," +
            std::to_string(m1) + ")x(" + std::to_string(l2) + "," + std::to_string(m2) + ")";
    for (int i = 0; i < four.dim(); ++i)
      if (!(lhs[i] == rhs[i]))
        *diff += "\n  [" + std::to_string(i) + "] action=" + lhs[i].str() +
                 " coproduct=" + rhs[i].str();
  }
  return false;
}

}  // namespace qcrystal::sl2
