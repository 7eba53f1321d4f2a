#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcrystal/errors.hpp"
#include "qcrystal/numeric.hpp"
#include "qcrystal/weight.hpp"

namespace qcrystal {

enum class AlgType { Finite, Affine, Indefinite };

inline std::string alg_type_name(AlgType t) {
  switch (t) {
    case AlgType::Finite: return "finite";
    case AlgType::Affine: return "affine";
    default: return "indefinite";
  }
}

// Validated input: generalized Cartan matrix plus the declared derivation
// pairings alpha_i(d_j). The corank is the number of derivation directions.
struct CartanSpec {
  int n = 0;
  std::vector<std::vector<long long>> a;  // a[i][j] = a_{ij}
  int corank = 0;
  std::vector<std::vector<long long>> root_d;  // root_d[i][j] = alpha_i(d_j)
};

namespace linalg {

// Gaussian elimination on an augmented rational system M x = rhs.
// Returns the unique solution when the system is consistent of full column
// rank, std::nullopt when inconsistent. Rank deficiency throws: every system
// solved here is determined by construction.
inline std::optional<std::vector<Rat>> solve_unique(std::vector<std::vector<Rat>> m,
                                                    std::vector<Rat> rhs) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  size_t rank = 0;
  std::vector<size_t> pivot_row(cols, SIZE_MAX);
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = SIZE_MAX;
    for (size_t r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        p = r;
        break;
      }
    if (p == SIZE_MAX) continue;
    std::swap(m[p], m[rank]);
    std::swap(rhs[p], rhs[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
      rhs[r] -= f * rhs[rank];
    }
    pivot_row[c] = rank;
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (rhs[r] != 0) return std::nullopt;
  if (rank < cols) throw Error("rank-deficient linear system");
  std::vector<Rat> x(cols, Rat(0));
  for (size_t c = 0; c < cols; ++c) {
    size_t r = pivot_row[c];
    x[c] = rhs[r] / m[r][c];
  }
  return x;
}

}  // namespace linalg

struct RootDatum {
  CartanSpec spec;
  AlgType type = AlgType::Indefinite;
  std::vector<long long> sym;           // minimal positive symmetrizers d_i
  std::vector<Weight> simple_roots;     // alpha_i in (h,d)-coordinates
  std::vector<long long> central;       // affine only: c = sum c_i h_i
  std::vector<Weight> positive_roots;   // finite type only
  std::vector<std::vector<long long>> positive_root_coords;  // same order
  Weight rho;                           // finite type only

  int rank() const { return spec.n; }
  int corank() const { return spec.corank; }

  Weight zero_weight() const { return Weight::zero(spec.n, spec.corank); }
  Weight fundamental(int i) const {
    Weight w = zero_weight();
    w.h[i] = 1;
    return w;
  }

  // s_i(w) = w - w(h_i) alpha_i
  Weight reflect(const Weight& w, int i) const {
    return w - w.h[i] * simple_roots[i];
  }
  RatWeight reflect(const RatWeight& w, int i) const {
    return w - w.h[i] * RatWeight(simple_roots[i]);
  }

  // Expansion of w in the simple roots, solved over the full (h,d) space.
  std::optional<std::vector<Rat>> root_coords(const Weight& w) const {
    const int n = spec.n;
    std::vector<std::vector<Rat>> m(n + spec.corank, std::vector<Rat>(n));
    std::vector<Rat> rhs(n + spec.corank);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) m[j][i] = Rat(spec.a[j][i]);  // alpha_i(h_j)
      rhs[j] = Rat(w.h[j]);
    }
    for (int k = 0; k < spec.corank; ++k) {
      for (int i = 0; i < n; ++i) m[n + k][i] = Rat(spec.root_d[i][k]);
      rhs[n + k] = Rat(w.d[k]);
    }
    return linalg::solve_unique(std::move(m), std::move(rhs));
  }

  // Symmetric form (v, alpha_i) = d_i v(h_i), extended by root expansion of
  // the second argument. Only used in finite type.
  Rat form(const Weight& v, const Weight& w) const {
    auto cw = root_coords(w);
    if (!cw) throw Error("weight outside rational root span");
    Rat acc(0);
    for (int i = 0; i < spec.n; ++i) acc += (*cw)[i] * Rat(sym[i]) * Rat(v.h[i]);
    return acc;
  }

  long long height_in_roots(const Weight& w) const {
    auto c = root_coords(w);
    if (!c) throw Error("weight outside rational root span");
    Rat acc(0);
    for (auto& x : *c) acc += x;
    if (!is_integer(acc)) throw Error("non-integral root height");
    return to_ll(rat_num(acc));
  }
};

namespace detail {

inline void check_gcm(const CartanSpec& s) {
  if (s.n <= 0) throw NonGCM("size must be positive");
  if ((int)s.a.size() != s.n) throw NonGCM("matrix row count");
  for (int i = 0; i < s.n; ++i) {
    if ((int)s.a[i].size() != s.n) throw NonGCM("matrix column count");
    if (s.a[i][i] != 2) throw NonGCM("diagonal entry must be 2");
    for (int j = 0; j < s.n; ++j) {
      if (i != j && s.a[i][j] > 0) throw NonGCM("positive off-diagonal entry");
      if ((s.a[i][j] == 0) != (s.a[j][i] == 0))
        throw NonGCM("asymmetric zero pattern");
    }
  }
  if (s.corank < 0) throw CorankMismatch("corank must be nonnegative");
  if ((int)s.root_d.size() != s.n && !(s.corank == 0 && s.root_d.empty()))
    throw CorankMismatch("root_d row count");
  for (auto& row : s.root_d)
    if ((int)row.size() != s.corank) throw CorankMismatch("root_d column count");
}

// Minimal positive integer symmetrizers, found per connected component of the
// Cartan graph by propagating the ratio d_i a_{ij} = d_j a_{ji}.
inline std::vector<long long> find_symmetrizers(const CartanSpec& s) {
  const int n = s.n;
  std::vector<Rat> r(n, Rat(0));
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = ncomp;
    r[start] = Rat(1);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || s.a[i][j] == 0) continue;
        // d_i a_ij = d_j a_ji  =>  d_j = d_i a_ij / a_ji
        Rat dj = r[i] * Rat(s.a[i][j]) / Rat(s.a[j][i]);
        if (comp[j] < 0) {
          comp[j] = ncomp;
          r[j] = dj;
          stack.push_back(j);
        } else if (r[j] != dj) {
          throw NotSymmetrizable("inconsistent symmetrizer ratios");
        }
      }
    }
    ++ncomp;
  }
  // scale each component to coprime positive integers
  std::vector<long long> d(n, 1);
  for (int c = 0; c < ncomp; ++c) {
    Int lcm_den = 1;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) lcm_den = boost::multiprecision::lcm(lcm_den, rat_den(r[i]));
    Int g = 0;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) g = boost::multiprecision::gcd(g, Int(rat_num(r[i] * Rat(lcm_den))));
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) d[i] = to_ll(Int(rat_num(r[i] * Rat(lcm_den))) / g);
  }
  for (int i = 0; i < n; ++i)
    if (d[i] <= 0) throw NotSymmetrizable("nonpositive symmetrizer");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i] * s.a[i][j] != d[j] * s.a[j][i])
        throw NotSymmetrizable("symmetrization check failed");
  return d;
}

// Rank and positive-semidefiniteness of a symmetric rational matrix via
// diagonal-pivot elimination. For a PSD matrix a zero diagonal entry forces a
// zero row, so diagonal pivoting is complete.
struct PsdInfo {
  bool psd;
  int rank;
};

inline PsdInfo psd_rank(std::vector<std::vector<Rat>> b) {
  // Schur-complement updates keep the trailing block symmetric, so checking
  // the trailing row suffices when a diagonal pivot vanishes.
  const int n = (int)b.size();
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (b[k][k] < 0) return {false, 0};
    if (b[k][k] == 0) {
      for (int j = k + 1; j < n; ++j)
        if (b[k][j] != 0) return {false, 0};
      continue;
    }
    ++rank;
    for (int r = k + 1; r < n; ++r) {
      if (b[r][k] == 0) continue;
      Rat f = b[r][k] / b[k][k];
      for (int c = k; c < n; ++c) b[r][c] -= f * b[k][c];
    }
  }
  return {true, rank};
}

}  // namespace detail

inline RootDatum validate(const CartanSpec& spec_in) {
  CartanSpec spec = spec_in;
  if (spec.root_d.empty() && spec.corank == 0)
    spec.root_d.assign(spec.n, std::vector<long long>{});
  detail::check_gcm(spec);

  RootDatum rd;
  rd.spec = spec;
  rd.sym = detail::find_symmetrizers(spec);

  const int n = spec.n;
  std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = Rat(rd.sym[i] * spec.a[i][j]);
  auto info = detail::psd_rank(b);
  if (info.psd && info.rank == n)
    rd.type = AlgType::Finite;
  else if (info.psd && info.rank == n - 1)
    rd.type = AlgType::Affine;
  else
    rd.type = AlgType::Indefinite;

  const int expected_corank = info.psd ? n - info.rank : [&] {
    // rank of A equals rank of the symmetrization; recompute for indefinite
    // input where psd_rank bails early.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = Rat(spec.a[i][j]);
    int rank = 0;
    for (int c = 0, r = 0; c < n && r < n; ++c) {
      int p = -1;
      for (int rr = r; rr < n; ++rr)
        if (m[rr][c] != 0) {
          p = rr;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[r]);
      for (int rr = r + 1; rr < n; ++rr) {
        if (m[rr][c] == 0) continue;
        Rat f = m[rr][c] / m[r][c];
        for (int cc = c; cc < n; ++cc) m[rr][cc] -= f * m[r][cc];
      }
      ++r;
      ++rank;
    }
    return n - rank;
  }();
  if (spec.corank != expected_corank)
    throw CorankMismatch("expected corank " + std::to_string(expected_corank) +
                         ", got " + std::to_string(spec.corank));

  for (int i = 0; i < n; ++i) {
    Weight alpha = Weight::zero(n, spec.corank);
    for (int j = 0; j < n; ++j) alpha.h[j] = spec.a[j][i];
    for (int k = 0; k < spec.corank; ++k) alpha.d[k] = spec.root_d[i][k];
    rd.simple_roots.push_back(alpha);
  }

  if (rd.type == AlgType::Affine) {
    // canonical central element: minimal positive integer vector with
    // sum_j c_j a_{ji} = 0 for all i
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = Rat(spec.a[j][i]);
    // kernel is one-dimensional: solve with last coordinate fixed where
    // possible, scanning for a valid normalization pivot
    std::vector<Rat> kern;
    for (int fix = n - 1; fix >= 0 && kern.empty(); --fix) {
      std::vector<std::vector<Rat>> mm(n, std::vector<Rat>(n - 1));
      std::vector<Rat> rhs(n);
      for (int r = 0; r < n; ++r) {
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == fix) continue;
          mm[r][cc++] = m[r][c];
        }
        rhs[r] = -m[r][fix];
      }
      try {
        auto sol = linalg::solve_unique(std::move(mm), std::move(rhs));
        if (!sol) continue;
        kern.assign(n, Rat(0));
        int cc = 0;
        for (int c = 0; c < n; ++c) kern[c] = (c == fix) ? Rat(1) : (*sol)[cc++];
      } catch (const Error&) {
        continue;
      }
    }
    if (kern.empty()) throw Error("failed to compute canonical central element");
    Int l = 1;
    for (auto& x : kern) l = boost::multiprecision::lcm(l, rat_den(x));
    std::vector<Int> ints(n);
    Int g = 0;
    for (int i = 0; i < n; ++i) {
      ints[i] = rat_num(kern[i] * Rat(l));
      g = boost::multiprecision::gcd(g, ints[i]);
    }
    bool all_nonneg = true, all_nonpos = true;
    for (auto& x : ints) {
      if (x < 0) all_nonneg = false;
      if (x > 0) all_nonpos = false;
    }
    if (!all_nonneg && !all_nonpos) throw Error("central element changes sign");
    for (int i = 0; i < n; ++i)
      rd.central.push_back(to_ll(ints[i] / g * (all_nonneg ? 1 : -1)));
  }

  if (rd.type == AlgType::Finite) {
    // positive roots: reflection closure of the simple roots, kept in root
    // coordinates to filter for positivity
    std::map<std::vector<long long>, Weight> roots;
    std::vector<std::pair<std::vector<long long>, Weight>> queue;
    for (int i = 0; i < n; ++i) {
      std::vector<long long> c(n, 0);
      c[i] = 1;
      roots[c] = rd.simple_roots[i];
      queue.push_back({c, rd.simple_roots[i]});
    }
    const size_t cap = 100000;
    while (!queue.empty()) {
      auto [c, w] = queue.back();
      queue.pop_back();
      for (int i = 0; i < n; ++i) {
        Weight w2 = rd.reflect(w, i);
        std::vector<long long> c2 = c;
        c2[i] -= w.h[i];
        bool pos = true;
        for (auto x : c2)
          if (x < 0) pos = false;
        if (!pos) continue;
        if (roots.count(c2)) continue;
        roots[c2] = w2;
        queue.push_back({c2, w2});
        if (roots.size() > cap) throw Error("positive-root closure runaway");
      }
    }
    for (auto& [c, w] : roots) {
      rd.positive_root_coords.push_back(c);
      rd.positive_roots.push_back(w);
    }
    rd.rho = Weight(std::vector<long long>(n, 1), {});
  }

  return rd;
}

inline RootDatum preset(const std::string& name) {
  CartanSpec s;
  if (name == "A1") {
    s.n = 1;
    s.a = {{2}};
  } else if (name == "A2") {
    s.n = 2;
    s.a = {{2, -1}, {-1, 2}};
  } else if (name == "A1~") {
    s.n = 2;
    s.a = {{2, -2}, {-2, 2}};
    s.corank = 1;
    s.root_d = {{1}, {0}};  // alpha_0(d) = 1, alpha_1(d) = 0
  } else {
    throw ParseFailure("unknown preset '" + name + "'");
  }
  return validate(s);
}

// True iff lambda - mu is a nonnegative integer combination of simple roots.
inline bool dominance_leq(const RootDatum& rd, const Weight& mu, const Weight& lambda) {
  auto c = rd.root_coords(lambda - mu);
  if (!c) return false;
  for (auto& x : *c)
    if (!is_integer(x) || x < 0) return false;
  return true;
}

inline long long level(const RootDatum& rd, const Weight& w) {
  if (rd.type != AlgType::Affine) throw NotAffine("level");
  long long acc = 0;
  for (int i = 0; i < rd.rank(); ++i) acc += rd.central[i] * w.h[i];
  return acc;
}

inline Weight dominantize(const RootDatum& rd, Weight w) {
  if (rd.type != AlgType::Finite) throw NotFiniteType("dominantize");
  for (size_t guard = 0; guard < 1000000; ++guard) {
    int i = -1;
    for (int j = 0; j < rd.rank(); ++j)
      if (w.h[j] < 0) {
        i = j;
        break;
      }
    if (i < 0) return w;
    w = rd.reflect(w, i);
  }
  throw Error("dominantize did not terminate");
}

// Weight multiplicities of the irreducible highest weight module, via the
// Freudenthal recursion on dominant weights plus Weyl-group invariance.
class FreudenthalTable {
 public:
  FreudenthalTable(const RootDatum& rd, Weight lambda) : rd_(rd), lambda_(std::move(lambda)) {
    if (rd.type != AlgType::Finite) throw NotFiniteType("weight multiplicities");
    if (!lambda_.is_dominant()) throw NotDominant(lambda_.str());
    lr_ = lambda_ + rd_.rho;
    lr_norm_ = rd_.form(lr_, lr_);
  }

  Int mult(const Weight& mu) {
    Weight nu = dominantize(rd_, mu);
    auto key = nu.str();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Int value = compute_dominant(nu);
    memo_.emplace(key, value);
    return value;
  }

  // Full weight diagram: weight -> multiplicity. Every weight below the top
  // is adjacent (by one simple root) to another weight, so extending the
  // frontier from actual weights only is complete.
  std::map<Weight, Int> character() {
    std::map<Weight, Int> out;
    std::vector<Weight> layer{lambda_};
    std::set<std::string> seen{lambda_.str()};
    while (!layer.empty()) {
      std::vector<Weight> next;
      for (auto& w : layer) {
        if (mult(w) == 0) continue;
        out[w] = mult(w);
        for (auto& alpha : rd_.simple_roots) {
          Weight w2 = w - alpha;
          if (seen.insert(w2.str()).second) next.push_back(w2);
        }
      }
      layer = std::move(next);
    }
    return out;
  }

 private:
  Int compute_dominant(const Weight& nu) {
    if (nu == lambda_) return 1;
    auto c = rd_.root_coords(lambda_ - nu);
    if (!c) return 0;
    for (auto& x : *c)
      if (!is_integer(x) || x < 0) return 0;
    Rat numer(0);
    for (size_t r = 0; r < rd_.positive_roots.size(); ++r) {
      const Weight& alpha = rd_.positive_roots[r];
      for (long long k = 1;; ++k) {
        Weight up = nu + k * alpha;
        auto cc = rd_.root_coords(lambda_ - up);
        bool inside = true;
        if (!cc)
          inside = false;
        else
          for (auto& x : *cc)
            if (!is_integer(x) || x < 0) inside = false;
        if (!inside) break;
        Int m = mult(up);
        if (m != 0) numer += Rat(m) * rd_.form(up, alpha);
      }
    }
    Weight nr = nu + rd_.rho;
    Rat denom = lr_norm_ - rd_.form(nr, nr);
    if (denom == 0) throw Error("Freudenthal denominator vanished");
    Rat val = Rat(2) * numer / denom;
    if (!is_integer(val)) throw Error("non-integral Freudenthal multiplicity");
    return rat_num(val);
  }

  const RootDatum& rd_;
  Weight lambda_;
  Weight lr_;
  Rat lr_norm_;
  std::map<std::string, Int> memo_;
};

inline Int freudenthal_dim(const RootDatum& rd, const Weight& lambda, const Weight& mu) {
  FreudenthalTable t(rd, lambda);
  return t.mult(mu);
}

inline Int weyl_dim(const RootDatum& rd, const Weight& lambda) {
  if (rd.type != AlgType::Finite) throw NotFiniteType("weyl_dim");
  if (!lambda.is_dominant()) throw NotDominant(lambda.str());
  Rat prod(1);
  Weight lr = lambda + rd.rho;
  for (auto& alpha : rd.positive_roots)
    prod *= rd.form(lr, alpha) / rd.form(rd.rho, alpha);
  if (!is_integer(prod)) throw Error("non-integral Weyl dimension");
  return rat_num(prod);
}

inline nlohmann::json root_datum_to_json(const RootDatum& rd) {
  nlohmann::json roots = nlohmann::json::array();
  for (auto& a : rd.simple_roots) roots.push_back(a.to_json());
  return nlohmann::json{{"type", alg_type_name(rd.type)},
                        {"cartan", rd.spec.a},
                        {"symmetrizers", rd.sym},
                        {"corank", rd.spec.corank},
                        {"simple_roots", roots}};
}

}  // namespace qcrystal
