#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/element.hpp"

namespace qcrystal::oracles {

// Tensor product decomposition through character arithmetic: multiply the
// two weight-multiplicity maps and peel off highest weight characters. Uses
// only the Freudenthal tables, no crystal operators.
inline std::multiset<Weight> tensor_decompose_by_characters(const RootDatum& rd,
                                                            const Weight& lambda,
                                                            const Weight& mu_dualside) {
  FreudenthalTable tl(rd, lambda);
  FreudenthalTable tm(rd, mu_dualside);
  std::map<Weight, Int> prod;
  for (auto& [w1, m1] : tl.character())
    for (auto& [w2, m2] : tm.character()) prod[w1 + (-w2)] += m1 * m2;
  for (auto it = prod.begin(); it != prod.end();)
    it = it->second == 0 ? prod.erase(it) : std::next(it);

  std::multiset<Weight> out;
  while (!prod.empty()) {
    // a maximal weight in dominance order; it must be dominant
    Weight top = prod.begin()->first;
    for (auto& [w, m] : prod)
      if (w != top && dominance_leq(rd, top, w)) top = w;
    for (auto& [w, m] : prod)
      if (w != top && dominance_leq(rd, top, w)) throw Error("peel: not maximal");
    if (!top.is_dominant()) throw Error("peel: maximal weight not dominant");
    Int mult = prod[top];
    if (mult < 0) throw Error("peel: negative multiplicity");
    FreudenthalTable tt(rd, top);
    for (auto& [w, m] : tt.character()) {
      prod[w] -= mult * m;
      if (prod[w] == 0) prod.erase(w);
    }
    for (Int k = 0; k < mult; ++k) out.insert(top);
  }
  return out;
}

// All raising words of length len from the lowest element that produce b;
// exhaustive depth-first enumeration. Words are read outermost-first, i.e.
// word[0] is the last raising operator applied.
inline void all_raising_words(const RootDatum& rd, const CrystalElement& from,
                              const CrystalElement& target, long long len,
                              std::vector<int>& word, std::vector<std::vector<int>>& out) {
  if (len == 0) {
    if (from == target) out.push_back(word);
    return;
  }
  for (int i = 0; i < rd.rank(); ++i) {
    auto up = crystal_e(rd, from, i);
    if (!up) continue;
    word.insert(word.begin(), i);  // earlier application = later letter
    all_raising_words(rd, *up, target, len - 1, word, out);
    word.erase(word.begin());
  }
}

inline std::vector<int> lex_min_word_bruteforce(const RootDatum& rd, const Weight& mu,
                                                const CrystalElement& b, long long len,
                                                const std::vector<int>& order) {
  std::vector<std::vector<int>> words;
  std::vector<int> w;
  all_raising_words(rd, lowest_dual(rd, mu), b, len, w, words);
  if (words.empty()) throw Error("no raising word found");
  std::vector<int> pr(order.size());
  for (size_t k = 0; k < order.size(); ++k) pr[order[k]] = (int)k;
  auto lt = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (size_t k = 0; k < x.size(); ++k)
      if (x[k] != y[k]) return pr[x[k]] < pr[y[k]];
    return false;
  };
  return *std::min_element(words.begin(), words.end(), lt);
}

// Independent reachability recount: recursive depth-bounded expansion with a
// plain set, no layer bookkeeping shared with generate().
inline void reach_rec(const RootDatum& rd, const CrystalElement& x, int depth,
                      std::map<std::string, int>& best) {
  auto it = best.find(x.ser());
  if (it != best.end() && it->second >= depth) return;
  best[x.ser()] = depth;
  if (depth == 0) return;
  for (int i = 0; i < rd.rank(); ++i) {
    if (auto f = crystal_f(rd, x, i)) reach_rec(rd, *f, depth - 1, best);
    if (auto e = crystal_e(rd, x, i)) reach_rec(rd, *e, depth - 1, best);
  }
}

inline size_t reachable_count(const RootDatum& rd, const CrystalElement& seed, int depth) {
  std::map<std::string, int> best;
  reach_rec(rd, seed, depth, best);
  return best.size();
}

}  // namespace qcrystal::oracles
