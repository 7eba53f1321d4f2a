#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcrystal/cartan.hpp"
#include "qcrystal/element.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/graph.hpp"

namespace qcrystal {

// Total-order key on a lowest weight crystal: distance above the lowest
// element, then the minimal raising word in the configured index order.
struct OrderKey {
  long long len = 0;
  std::vector<int> word;
};

inline std::vector<int> natural_order(int n) {
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = i;
  return o;
}

// order[k] = index with priority k; smaller priority compares first
inline std::vector<int> order_priority(const std::vector<int>& order) {
  std::vector<int> pr(order.size());
  for (size_t k = 0; k < order.size(); ++k) pr[order[k]] = (int)k;
  return pr;
}

inline bool key_lt(const OrderKey& a, const OrderKey& b, const std::vector<int>& priority) {
  if (a.len != b.len) return a.len < b.len;
  for (size_t k = 0; k < a.word.size() && k < b.word.size(); ++k) {
    if (a.word[k] != b.word[k]) return priority[a.word[k]] < priority[b.word[k]];
  }
  return a.word.size() < b.word.size();
}

// Layered enumeration of the lowest weight crystal B(-mu) up to raising
// distance max_length. exhausted marks that the frontier emptied within the
// budget, i.e. the whole crystal was listed.
struct LowestCrystalSlice {
  std::vector<std::vector<CrystalElement>> layers;
  bool exhausted = false;

  std::vector<CrystalElement> all() const {
    std::vector<CrystalElement> v;
    for (auto& l : layers) v.insert(v.end(), l.begin(), l.end());
    return v;
  }
  size_t size() const {
    size_t s = 0;
    for (auto& l : layers) s += l.size();
    return s;
  }
};

inline LowestCrystalSlice enumerate_lowest(const RootDatum& rd, const Weight& mu,
                                           long long max_length, size_t cap = 200000) {
  if (!mu.is_dominant()) throw NotDominant(mu.str());
  LowestCrystalSlice out;
  std::set<std::string> seen;
  std::vector<CrystalElement> layer{lowest_dual(rd, mu)};
  seen.insert(layer[0].ser());
  size_t total = 0;
  for (long long l = 0; l <= max_length && !layer.empty(); ++l) {
    std::sort(layer.begin(), layer.end());
    total += layer.size();
    if (total > cap)
      throw BudgetExceeded("lowest-crystal slice cap",
                           nlohmann::json{{"mu", mu.to_json()}, {"length", l}});
    out.layers.push_back(layer);
    std::vector<CrystalElement> next;
    for (auto& b : layer)
      for (int i = 0; i < rd.rank(); ++i) {
        auto eb = crystal_e(rd, b, i);
        if (eb && seen.insert(eb->ser()).second) next.push_back(*eb);
      }
    layer = std::move(next);
  }
  out.exhausted = layer.empty();
  return out;
}

// Raising distance of b above u_{-mu}: the root height of wt(b) + mu.
inline long long lw_length(const RootDatum& rd, const Weight& mu, const CrystalElement& b) {
  auto c = rd.root_coords(b.wt() + mu);
  if (!c) throw NotInCrystal(b.ser());
  long long h = 0;
  for (auto& x : *c) {
    if (!is_integer(x) || x < 0) throw NotInCrystal(b.ser());
    h += to_ll(rat_num(x));
  }
  return h;
}

// Greedy minimal word: while b is not the lowest element, emit the first
// (in the configured order) applicable lowering index and descend. The word
// read left to right is the raising word applied outermost-first.
inline std::vector<int> min_word(const RootDatum& rd, CrystalElement b,
                                 const std::vector<int>& order) {
  std::vector<int> word;
  for (size_t guard = 0; guard < 1000000; ++guard) {
    std::optional<CrystalElement> down;
    int letter = -1;
    for (int idx : order) {
      down = crystal_f(rd, b, idx);
      if (down) {
        letter = idx;
        break;
      }
    }
    if (letter < 0) return word;  // lowest element reached
    word.push_back(letter);
    b = *down;
  }
  throw Error("min_word descent did not terminate");
}

inline OrderKey order_key(const RootDatum& rd, const Weight& mu, const CrystalElement& b,
                          const std::vector<int>& order) {
  OrderKey k;
  k.len = lw_length(rd, mu, b);
  k.word = min_word(rd, b, order);
  if ((long long)k.word.size() != k.len) throw NotInCrystal(b.ser());
  return k;
}

inline bool order_lt(const RootDatum& rd, const Weight& mu, const CrystalElement& b,
                     const CrystalElement& c, const std::vector<int>& order) {
  auto pr = order_priority(order);
  return key_lt(order_key(rd, mu, b, order), order_key(rd, mu, c, order), pr);
}

// Quotient test: the tensor rule reduces e_i(u_lambda (x) b) = 0 for all i
// to eps_i(b) <= lambda(h_i). Non-null result is lambda + wt(b), which the
// criterion forces dominant.
inline std::optional<Weight> hw_quotient(const RootDatum& rd, const Weight& lambda,
                                         const CrystalElement& b) {
  if (!lambda.is_dominant()) throw NotDominant(lambda.str());
  for (int i = 0; i < rd.rank(); ++i)
    if (ExtInt(lambda.h[i]) < b.eps(i)) return std::nullopt;
  Weight xi = lambda + b.wt();
  if (!xi.is_dominant()) throw Error("quotient weight not dominant: " + xi.str());
  return xi;
}

struct FiltRecord {
  CrystalElement b;
  OrderKey key;
  std::optional<Weight> quotient;
};

struct FiltrationReport {
  Weight lambda, mu;
  long long max_length = 0;
  bool exhausted = false;   // depth certificate: whole crystal listed
  bool mirror = false;
  std::vector<FiltRecord> records;
};

inline FiltrationReport filtration_report(const RootDatum& rd, const Weight& lambda,
                                          const Weight& mu, long long max_length,
                                          const std::vector<int>& order_in = {},
                                          size_t cap = 200000) {
  auto order = order_in.empty() ? natural_order(rd.rank()) : order_in;
  auto pr = order_priority(order);
  auto slice = enumerate_lowest(rd, mu, max_length, cap);
  FiltrationReport rep;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.max_length = max_length;
  rep.exhausted = slice.exhausted;
  for (auto& b : slice.all()) {
    FiltRecord r{b, order_key(rd, mu, b, order), hw_quotient(rd, lambda, b)};
    rep.records.push_back(std::move(r));
  }
  std::sort(rep.records.begin(), rep.records.end(),
            [&](const FiltRecord& x, const FiltRecord& y) { return key_lt(x.key, y.key, pr); });
  for (size_t k = 1; k < rep.records.size(); ++k)
    if (!key_lt(rep.records[k - 1].key, rep.records[k].key, pr))
      throw Error("order keys not strictly increasing");
  return rep;
}

// Lowering closure of { u_lambda (x) c : c >= b } in the explored slice of
// B(-mu); seeds are capped at raising distance l(b) + depth.
inline CrystalGraph explicit_filtration_crystal(const RootDatum& rd, const Weight& lambda,
                                                const Weight& mu, const CrystalElement& b,
                                                int depth,
                                                const std::vector<int>& order_in = {},
                                                size_t cap = 200000) {
  auto order = order_in.empty() ? natural_order(rd.rank()) : order_in;
  auto pr = order_priority(order);
  OrderKey kb = order_key(rd, mu, b, order);
  auto slice = enumerate_lowest(rd, mu, kb.len + depth, cap);
  std::vector<CrystalElement> seeds;
  CrystalElement top = CrystalElement::highest(rd, lambda);
  for (auto& c : slice.all()) {
    OrderKey kc = order_key(rd, mu, c, order);
    bool ge = !key_lt(kc, kb, pr);
    if (ge) seeds.push_back(CrystalElement::tensor(top, c));
  }
  GenOptions opt;
  opt.vertex_cap = cap;
  opt.lowering_only = true;
  return generate(rd, seeds, depth, opt);
}

struct AffineVerdict {
  enum class Case { AllHW, NoneHW, TrivialM, LevelZeroNonP0 };
  Case kind;
  long long lvl = 0;
  std::vector<FiltRecord> witnesses;  // records with non-null quotient found
  long long depth = 0;
  bool exhausted = false;

  std::string name() const {
    switch (kind) {
      case Case::AllHW: return "AllHW";
      case Case::NoneHW: return "NoneHW";
      case Case::TrivialM: return "TrivialM";
      default: return "LevelZeroNonP0";
    }
  }
};

inline AffineVerdict affine_classify(const RootDatum& rd, const Weight& lambda,
                                     const Weight& mu, long long depth,
                                     const std::vector<int>& order_in = {},
                                     size_t cap = 200000) {
  if (rd.type != AlgType::Affine) throw NotAffine("affine_classify");
  AffineVerdict v;
  v.depth = depth;
  v.lvl = level(rd, lambda - mu);
  FiltrationReport rep = filtration_report(rd, lambda, mu, depth, order_in, cap);
  v.exhausted = rep.exhausted;
  for (auto& r : rep.records)
    if (r.quotient) v.witnesses.push_back(r);

  if (v.lvl > 0) {
    v.kind = AffineVerdict::Case::AllHW;
    if (v.witnesses.empty())
      throw Error("positive level but no quotient witness within depth");
  } else if (v.lvl < 0) {
    v.kind = AffineVerdict::Case::NoneHW;
    if (!v.witnesses.empty()) throw Error("negative level but quotient witness found");
  } else if ((lambda - mu).in_P0()) {
    v.kind = AffineVerdict::Case::TrivialM;
    if (v.witnesses.size() != 1 || v.witnesses[0].key.len != 0 ||
        !v.witnesses[0].quotient->in_P0())
      throw Error("level-zero P0 case: expected exactly the lowest-element witness");
  } else {
    v.kind = AffineVerdict::Case::LevelZeroNonP0;
    if (!v.witnesses.empty()) throw Error("level-zero non-P0 case: witness found");
  }
  return v;
}

// Mirror construction on B(lambda): quotient criterion phi_i(b) <= mu(h_i),
// quotient weight -mu + wt(b). The mirror order puts larger lowering distance
// first, so the defining requirement wt(b1) < wt(b2) => b1 < b2 holds.
inline FiltrationReport mirror_report(const RootDatum& rd, const Weight& lambda,
                                      const Weight& mu, long long max_length,
                                      const std::vector<int>& order_in = {},
                                      size_t cap = 200000) {
  if (!lambda.is_dominant()) throw NotDominant(lambda.str());
  if (!mu.is_dominant()) throw NotDominant(mu.str());
  auto order = order_in.empty() ? natural_order(rd.rank()) : order_in;
  auto pr = order_priority(order);

  // enumerate B(lambda) by lowering distance below u_lambda
  std::set<std::string> seen;
  std::vector<CrystalElement> layer{CrystalElement::highest(rd, lambda)};
  seen.insert(layer[0].ser());
  FiltrationReport rep;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.max_length = max_length;
  rep.mirror = true;
  size_t total = 0;
  for (long long l = 0; l <= max_length && !layer.empty(); ++l) {
    std::sort(layer.begin(), layer.end());
    total += layer.size();
    if (total > cap)
      throw BudgetExceeded("mirror slice cap", nlohmann::json{{"length", l}});
    for (auto& b : layer) {
      // minimal raising word toward u_lambda, greedy in the configured order
      std::vector<int> word;
      CrystalElement cur = b;
      for (long long steps = 0; steps < l; ++steps) {
        bool moved = false;
        for (int idx : order) {
          auto up = crystal_e(rd, cur, idx);
          if (up) {
            word.push_back(idx);
            cur = *up;
            moved = true;
            break;
          }
        }
        if (!moved) throw NotInCrystal(b.ser());
      }
      FiltRecord r;
      r.b = b;
      r.key = OrderKey{l, std::move(word)};
      bool ok = true;
      for (int i = 0; i < rd.rank() && ok; ++i)
        if (b.phi(i) > ExtInt(mu.h[i])) ok = false;
      if (ok) {
        Weight xi = -mu + b.wt();
        if (!(-xi).is_dominant()) throw Error("mirror quotient not anti-dominant");
        r.quotient = xi;
      }
      rep.records.push_back(std::move(r));
    }
    std::vector<CrystalElement> next;
    for (auto& b : layer)
      for (int i = 0; i < rd.rank(); ++i) {
        auto fb = crystal_f(rd, b, i);
        if (fb && seen.insert(fb->ser()).second) next.push_back(*fb);
      }
    layer = std::move(next);
  }
  rep.exhausted = layer.empty();
  std::sort(rep.records.begin(), rep.records.end(),
            [&](const FiltRecord& x, const FiltRecord& y) {
              if (x.key.len != y.key.len) return x.key.len > y.key.len;
              OrderKey a{0, x.key.word}, b{0, y.key.word};
              return key_lt(a, b, pr);
            });
  return rep;
}

inline nlohmann::json filt_report_to_json(const FiltrationReport& rep) {
  nlohmann::json recs = nlohmann::json::array();
  for (auto& r : rep.records) {
    nlohmann::json j{{"element", r.b.ser()},
                     {"length", r.key.len},
                     {"word", r.key.word},
                     {"weight", r.b.wt().to_json()}};
    j["quotient"] = r.quotient ? r.quotient->to_json() : nlohmann::json(nullptr);
    recs.push_back(std::move(j));
  }
  return nlohmann::json{{"lambda", rep.lambda.to_json()},
                        {"mu", rep.mu.to_json()},
                        {"max_length", rep.max_length},
                        {"exhausted", rep.exhausted},
                        {"mirror", rep.mirror},
                        {"records", recs}};
}

inline std::string filt_report_to_csv(const FiltrationReport& rep) {
  std::string out = "# certificate: max_length=" + std::to_string(rep.max_length) +
                    " exhausted=" + (rep.exhausted ? "true" : "false") +
                    (rep.mirror ? " mirror=true" : "") + "\n";
  out += "length,word,weight,quotient\n";
  for (auto& r : rep.records) {
    std::string word;
    for (size_t k = 0; k < r.key.word.size(); ++k)
      word += (k ? " " : "") + std::to_string(r.key.word[k]);
    out += std::to_string(r.key.len) + ",\"" + word + "\",\"" + r.b.wt().str() + "\",\"" +
           (r.quotient ? r.quotient->str() : "") + "\"\n";
  }
  return out;
}

inline nlohmann::json affine_verdict_to_json(const AffineVerdict& v) {
  nlohmann::json ws = nlohmann::json::array();
  for (auto& r : v.witnesses)
    ws.push_back({{"element", r.b.ser()},
                  {"length", r.key.len},
                  {"word", r.key.word},
                  {"quotient", r.quotient->to_json()}});
  return nlohmann::json{{"case", v.name()},
                        {"level", v.lvl},
                        {"witnesses", ws},
                        {"depth", v.depth},
                        {"exhausted", v.exhausted}};
}

}  // namespace qcrystal
