#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcrystal/cartan.hpp"
#include "qcrystal/filtration.hpp"
#include "qcrystal/graph.hpp"

namespace qcrystal {

// Census machinery for cell multiplicities. Idempotent-level counts are never
// materialized directly; everything runs through the stabilization chain
// (lambda_j, mu_j) = (dominant part of eta + j*step, lambda_j - eta) with a
// strictly dominant step, declaring stabilization at two consecutive equal
// counts and surfacing NotStabilized otherwise.

inline Weight dominant_step(const RootDatum& rd) {
  Weight w = rd.zero_weight();
  for (auto& x : w.h) x = 1;
  return w;
}

inline std::pair<Weight, Weight> chain_pair(const RootDatum& rd, const Weight& eta, int j) {
  Weight lambda = rd.zero_weight(), mu = rd.zero_weight();
  for (int i = 0; i < rd.rank(); ++i) lambda.h[i] = std::max(eta.h[i], 0LL) + j;
  lambda.d = eta.d;
  mu = lambda - eta;
  return {lambda, mu};
}

// First chain step at which a component with highest weight xi can exist at
// all: xi must lie under the maximal weight lambda_j + dominantize(-mu_j) of
// the explored tensor. Counting plateaus before this step are vacuous and
// must not be mistaken for stabilization. Finite type only; elsewhere the
// caller anchors at the first positive count.
inline int chain_anchor(const RootDatum& rd, const Weight& xi, const Weight& eta,
                        int theta_steps) {
  for (int j = 0; j <= theta_steps; ++j) {
    auto [lambda, mu] = chain_pair(rd, eta, j);
    if (dominance_leq(rd, xi, lambda + dominantize(rd, -mu))) return j;
  }
  return theta_steps + 1;
}

inline long long count_hw_components(const RootDatum& rd, const Weight& lambda,
                                     const Weight& mu, const Weight& xi,
                                     long long max_length, size_t cap = 200000) {
  if (!xi.is_dominant()) throw NotDominant(xi.str());
  auto slice = enumerate_lowest(rd, mu, max_length, cap);
  long long count = 0;
  for (auto& b : slice.all()) {
    auto q = hw_quotient(rd, lambda, b);
    if (q && *q == xi) ++count;
  }
  return count;
}

struct MultiplicityCell {
  Weight xi;
  Weight eta;
  std::optional<Weight> eta2;   // set for bi-weight censuses
  long long count = 0;
  Weight theta_step;            // stabilizer step used by the chain
  int stabilized_at = -1;       // chain step where two consecutive counts agreed
  long long max_length = 0;
  std::optional<Int> oracle;    // Freudenthal value in finite type

  nlohmann::json to_json() const {
    nlohmann::json j{{"xi", xi.to_json()},
                     {"eta", eta.to_json()},
                     {"count", count},
                     {"theta_step", theta_step.to_json()},
                     {"stabilized_at", stabilized_at},
                     {"max_length", max_length}};
    if (eta2) j["eta2"] = eta2->to_json();
    if (oracle) j["oracle"] = to_ll(*oracle);
    return j;
  }
};

// Stabilized count of components isomorphic to B(xi) among those generated
// below u_lambda (x) B(-mu) along the chain with lambda - mu = eta. In finite
// type the result is checked against the weight multiplicity dim V(xi)_eta.
inline MultiplicityCell multiplicity(const RootDatum& rd, const Weight& xi, const Weight& eta,
                                     int theta_steps, long long max_length_hint = -1,
                                     size_t cap = 200000) {
  if (!xi.is_dominant()) throw NotDominant(xi.str());
  MultiplicityCell out;
  out.xi = xi;
  out.eta = eta;
  out.theta_step = dominant_step(rd);

  // any witness b has wt(b) = xi - lambda, so its raising distance is the
  // root height of xi - eta, independent of the chain step
  long long need = 0;
  {
    auto c = rd.root_coords(xi - eta);
    bool expressible = true;
    if (!c)
      expressible = false;
    else
      for (auto& x : *c)
        if (!is_integer(x) || x < 0) expressible = false;
    if (!expressible) {
      out.count = 0;
      out.stabilized_at = 0;
      if (rd.type == AlgType::Finite) {
        out.oracle = freudenthal_dim(rd, xi, eta);
        if (*out.oracle != 0) throw Error("oracle disagrees on inexpressible weight");
      }
      return out;
    }
    need = rd.height_in_roots(xi - eta);
  }
  if (max_length_hint >= 0 && max_length_hint < need)
    throw BudgetExceeded("max_length " + std::to_string(max_length_hint) +
                         " below the witness raising distance " + std::to_string(need));
  out.max_length = max_length_hint < 0 ? need : max_length_hint;

  const int j0 = rd.type == AlgType::Finite ? chain_anchor(rd, xi, eta, theta_steps) : 0;
  std::vector<long long> counts;
  for (int j = j0; j <= theta_steps; ++j) {
    auto [lambda, mu] = chain_pair(rd, eta, j);
    counts.push_back(count_hw_components(rd, lambda, mu, xi, out.max_length, cap));
    const size_t k = counts.size();
    const bool anchored =
        rd.type == AlgType::Finite ? true : counts[k - 1] > 0;
    if (k >= 2 && counts[k - 1] == counts[k - 2] && anchored) {
      out.count = counts[k - 1];
      out.stabilized_at = j;
      break;
    }
  }
  if (out.stabilized_at < 0)
    throw NotStabilized("multiplicity(" + xi.str() + "; " + eta.str() + ")",
                        nlohmann::json{{"counts", counts}, {"anchor", j0}});
  for (size_t j = 1; j < counts.size(); ++j)
    if (counts[j] < counts[j - 1]) throw Error("census count decreased along chain");

  if (rd.type == AlgType::Finite) {
    out.oracle = freudenthal_dim(rd, xi, eta);
    if (Int(out.count) != *out.oracle)
      throw Error("stabilized count " + std::to_string(out.count) +
                  " != weight multiplicity " + out.oracle->str());
  }
  return out;
}

// Component classification of the vertex's component, with the affine level
// certificate supplied when it applies.
inline Classification cell_assign(const RootDatum& rd, const Weight& lambda, const Weight& mu,
                                  const Decomposition& dec, int vertex) {
  std::string cert;
  if (rd.type == AlgType::Affine) {
    long long l = level(rd, lambda - mu);
    if (l < 0)
      cert = "level(" + (lambda - mu).str() + ") = " + std::to_string(l) + " < 0";
    else if (l == 0 && !(lambda - mu).in_P0())
      cert = "level 0 and " + (lambda - mu).str() + " not in P0";
  }
  for (auto& c : dec.components)
    if (std::binary_search(c.vertex_ids.begin(), c.vertex_ids.end(), vertex)) {
      if (c.cls.kind == Classification::Kind::UnknownAtDepth && !cert.empty()) {
        Classification up = c.cls;
        up.kind = Classification::Kind::NotHW;
        up.certificate = cert;
        return up;
      }
      return c.cls;
    }
  throw Error("vertex not in decomposition");
}

namespace detail {

// One full decomposition per chain step; counts per (xi, left weight).
struct BiweightCensus {
  std::map<std::pair<Weight, Weight>, long long> counts;  // (xi, eta1) -> count
};

inline BiweightCensus census_step(const RootDatum& rd, const Weight& lambda, const Weight& mu,
                                  size_t cap) {
  if (rd.type != AlgType::Finite) throw NotFiniteType("full bi-weight census");
  // widen depth until the tensor graph closes
  int depth = 8;
  for (;;) {
    GenOptions opt;
    opt.vertex_cap = cap;
    Decomposition dec = decompose(rd, lambda, mu, depth, opt);
    bool all = true;
    for (bool c : dec.graph.complete)
      if (!c) {
        all = false;
        break;
      }
    if (!all) {
      depth *= 2;
      if (depth > 4096) throw BudgetExceeded("tensor graph does not close");
      continue;
    }
    BiweightCensus out;
    for (auto& c : dec.components) {
      if (c.cls.kind != Classification::Kind::HW) throw Error("unclassified finite component");
      for (int v : c.vertex_ids) out.counts[{*c.cls.xi, dec.graph.verts[v].wt()}]++;
    }
    return out;
  }
}

}  // namespace detail

// Stabilized number of canonical-basis indices lying in cell xi with the
// given left weight eta1 and right weight eta2, checked against
// dim V(xi)_{eta1} * dim V(xi)_{eta2}.
inline MultiplicityCell cell_graded_dimension(const RootDatum& rd, const Weight& xi,
                                              const Weight& eta1, const Weight& eta2,
                                              int theta_steps, size_t cap = 200000) {
  if (!xi.is_dominant()) throw NotDominant(xi.str());
  MultiplicityCell out;
  out.xi = xi;
  out.eta = eta1;
  out.eta2 = eta2;
  out.theta_step = dominant_step(rd);

  const int j0 = chain_anchor(rd, xi, eta2, theta_steps);
  std::vector<long long> counts;
  for (int j = j0; j <= theta_steps; ++j) {
    auto [lambda, mu] = chain_pair(rd, eta2, j);
    auto census = detail::census_step(rd, lambda, mu, cap);
    auto it = census.counts.find({xi, eta1});
    counts.push_back(it == census.counts.end() ? 0 : it->second);
    const size_t k = counts.size();
    if (k >= 2 && counts[k - 1] == counts[k - 2]) {
      out.count = counts[k - 1];
      out.stabilized_at = j;
      break;
    }
  }
  if (out.stabilized_at < 0)
    throw NotStabilized("cell_graded_dimension",
                        nlohmann::json{{"counts", counts}, {"anchor", j0}});

  if (rd.type == AlgType::Finite) {
    Int expect = freudenthal_dim(rd, xi, eta1) * freudenthal_dim(rd, xi, eta2);
    out.oracle = expect;
    if (Int(out.count) != expect)
      throw Error("cell census " + std::to_string(out.count) + " != graded dimension " +
                  expect.str());
  }
  return out;
}

// Dominant weights xi <= cutoff, enumerated through the root cone. Finite
// type only; the inverse Cartan matrix is entrywise nonnegative there, which
// bounds the root coordinates.
inline std::vector<Weight> dominant_weights_below(const RootDatum& rd, const Weight& cutoff) {
  if (rd.type != AlgType::Finite) throw NotFiniteType("dominant enumeration");
  auto cc = rd.root_coords(cutoff);
  if (!cc) return {};
  const int n = rd.rank();
  std::vector<long long> bound(n);
  for (int i = 0; i < n; ++i) {
    if ((*cc)[i] < 0) return {};
    Int num = rat_num((*cc)[i]), den = rat_den((*cc)[i]);
    bound[i] = to_ll(num / den);
  }
  std::vector<Weight> out;
  std::vector<long long> c(n, 0);
  for (;;) {
    Weight beta = rd.zero_weight();
    for (int i = 0; i < n; ++i) beta = beta + c[i] * rd.simple_roots[i];
    Weight xi = cutoff - beta;
    if (xi.is_dominant() && dominance_leq(rd, xi, cutoff)) out.push_back(xi);
    int k = 0;
    while (k < n) {
      if (++c[k] <= bound[k]) break;
      c[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PeterWeylReport {
  Weight eta1, eta2, cutoff;
  long long formula = 0;  // sum of dim V(xi)_{eta1} * dim V(xi)_{eta2}
  long long census = 0;   // stabilized bi-weight census over the same cells
  std::vector<MultiplicityCell> cells;

  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (auto& c : cells) cs.push_back(c.to_json());
    return nlohmann::json{{"eta1", eta1.to_json()},   {"eta2", eta2.to_json()},
                          {"cutoff", cutoff.to_json()}, {"formula", formula},
                          {"census", census},         {"cells", cs}};
  }
};

inline PeterWeylReport peter_weyl_count(const RootDatum& rd, const Weight& eta1,
                                        const Weight& eta2, const Weight& cutoff,
                                        int theta_steps, size_t cap = 200000) {
  if (rd.type != AlgType::Finite) throw NotFiniteType("peter_weyl_count");
  PeterWeylReport rep;
  rep.eta1 = eta1;
  rep.eta2 = eta2;
  rep.cutoff = cutoff;
  for (auto& xi : dominant_weights_below(rd, cutoff)) {
    Int f = freudenthal_dim(rd, xi, eta1) * freudenthal_dim(rd, xi, eta2);
    rep.formula += to_ll(f);
    if (f == 0) continue;
    MultiplicityCell cell = cell_graded_dimension(rd, xi, eta1, eta2, theta_steps, cap);
    rep.census += cell.count;
    rep.cells.push_back(std::move(cell));
  }
  if (rep.formula != rep.census)
    throw Error("Peter-Weyl census mismatch: formula " + std::to_string(rep.formula) +
                " vs census " + std::to_string(rep.census));
  return rep;
}

inline std::string multiplicity_csv_header() {
  return "xi,eta,eta2,count,oracle,stabilized_at,max_length\n";
}

inline std::string multiplicity_csv_row(const MultiplicityCell& c) {
  return "\"" + c.xi.str() + "\",\"" + c.eta.str() + "\",\"" +
         (c.eta2 ? c.eta2->str() : "") + "\"," + std::to_string(c.count) + "," +
         (c.oracle ? c.oracle->str() : "") + "," + std::to_string(c.stabilized_at) + "," +
         std::to_string(c.max_length) + "\n";
}

}  // namespace qcrystal
