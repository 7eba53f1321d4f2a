#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/weight.hpp"

namespace qcrystal {

// Piecewise-linear path from 0, stored as its segment vectors and kept in
// canonical form: zero segments dropped, consecutive segments pointing the
// same way merged. Operators are the Littelmann root operators; the model
// realizes the highest weight crystal as the operator orbit of the straight
// path to a dominant weight.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<RatWeight> segs) : segs_(std::move(segs)) { canonicalize(); }

  static Path straight(const Weight& lambda) {
    RatWeight seg(lambda);
    return Path(std::vector<RatWeight>{seg});
  }

  const std::vector<RatWeight>& segments() const { return segs_; }

  RatWeight endpoint() const {
    if (segs_.empty()) return RatWeight{};
    RatWeight e = segs_[0];
    for (size_t k = 1; k < segs_.size(); ++k) e = e + segs_[k];
    return e;
  }

  Weight weight(const RootDatum& rd) const {
    if (segs_.empty()) return rd.zero_weight();
    return endpoint().to_weight();
  }

  // i-height values at the breakpoints, including the start at 0
  std::vector<Rat> heights(int i) const {
    std::vector<Rat> h{Rat(0)};
    Rat acc(0);
    for (auto& s : segs_) {
      acc += s.h[i];
      h.push_back(acc);
    }
    return h;
  }

  // minimum of the i-height function; attained at a breakpoint
  Rat min_height(int i) const {
    Rat m(0);
    Rat acc(0);
    for (auto& s : segs_) {
      acc += s.h[i];
      if (acc < m) m = acc;
    }
    return m;
  }

  long long min_height_int(int i) const {
    Rat m = min_height(i);
    if (!is_integer(m))
      throw IntegralityViolation("non-integral minimum " + rat_str(m) + " at i=" +
                                 std::to_string(i));
    return to_ll(rat_num(m));
  }

  friend bool operator==(const Path& a, const Path& b) { return a.segs_ == b.segs_; }

  std::string str() const {
    std::string s = "[";
    for (size_t k = 0; k < segs_.size(); ++k) s += (k ? "|" : "") + segs_[k].str();
    return s + "]";
  }

 private:
  void canonicalize() {
    std::vector<RatWeight> out;
    for (auto& s : segs_) {
      if (s.is_zero()) continue;
      if (!out.empty() && same_direction(out.back(), s))
        out.back() = out.back() + s;
      else
        out.push_back(s);
    }
    segs_ = std::move(out);
  }

  static bool same_direction(const RatWeight& a, const RatWeight& b) {
    // b = c*a with c > 0
    Rat c(0);
    bool have = false;
    for (size_t i = 0; i < a.h.size(); ++i) {
      if (a.h[i] == 0) {
        if (b.h[i] != 0) return false;
      } else {
        Rat r = b.h[i] / a.h[i];
        if (!have) {
          c = r;
          have = true;
        } else if (r != c)
          return false;
      }
    }
    for (size_t i = 0; i < a.d.size(); ++i) {
      if (a.d[i] == 0) {
        if (b.d[i] != 0) return false;
      } else {
        Rat r = b.d[i] / a.d[i];
        if (!have) {
          c = r;
          have = true;
        } else if (r != c)
          return false;
      }
    }
    return have && c > 0;
  }

  std::vector<RatWeight> segs_;
};

namespace detail {

// Split the path's segment list at the first time in segment range
// [from, ...) where the i-height reaches the value target; returns the
// breakpoint position as a segment index in a possibly refined list.
struct SplitPos {
  std::vector<RatWeight> segs;
  size_t index;  // number of whole segments before the split point
};

inline SplitPos split_at_value_forward(const std::vector<RatWeight>& segs, int i,
                                       size_t from, const Rat& start_height,
                                       const Rat& target) {
  Rat acc = start_height;
  std::vector<RatWeight> out(segs.begin(), segs.begin() + from);
  for (size_t k = from; k < segs.size(); ++k) {
    Rat nxt = acc + segs[k].h[i];
    if (nxt == target) {
      out.push_back(segs[k]);
      out.insert(out.end(), segs.begin() + k + 1, segs.end());
      return {std::move(out), k + 1};
    }
    bool crosses = (acc < target && nxt > target) || (acc > target && nxt < target);
    if (crosses) {
      Rat frac = (target - acc) / (nxt - acc);
      RatWeight first = frac * segs[k];
      RatWeight second = segs[k] - first;
      out.push_back(first);
      size_t idx = out.size();
      out.push_back(second);
      out.insert(out.end(), segs.begin() + k + 1, segs.end());
      return {std::move(out), idx};
    }
    out.push_back(segs[k]);
    acc = nxt;
  }
  throw Error("height value not attained");
}

}  // namespace detail

inline long long path_eps(const Path& p, int i) { return -p.min_height_int(i); }

inline long long path_phi(const Path& p, int i) {
  auto h = p.heights(i);
  Rat end = h.back();
  if (!is_integer(end)) throw IntegralityViolation("non-integral endpoint height");
  return to_ll(rat_num(end)) - p.min_height_int(i);
}

// Littelmann lowering operator. Cut at the last attainment of the minimum m
// and the first subsequent attainment of m+1; reflect the middle by s_i and
// leave the tail segment vectors unchanged (the tail translates by -alpha_i).
inline std::optional<Path> path_f(const RootDatum& rd, const Path& p, int i) {
  long long m = p.min_height_int(i);
  if (path_phi(p, i) == 0) return std::nullopt;

  const auto& segs = p.segments();
  auto h = p.heights(i);
  size_t t0 = 0;
  for (size_t k = 0; k < h.size(); ++k)
    if (h[k] == Rat(m)) t0 = k;

  auto split = detail::split_at_value_forward(segs, i, t0, h[t0], Rat(m + 1));
  std::vector<RatWeight> out;
  out.reserve(split.segs.size());
  for (size_t k = 0; k < t0; ++k) out.push_back(split.segs[k]);
  for (size_t k = t0; k < split.index; ++k) out.push_back(rd.reflect(split.segs[k], i));
  for (size_t k = split.index; k < split.segs.size(); ++k) out.push_back(split.segs[k]);
  return Path(std::move(out));
}

// Raising operator, mirror image: cut at the first attainment of the minimum
// m and, before it, the latest attainment of m+1; reflect the middle, leave
// the tail segment vectors unchanged (the tail translates by +alpha_i).
inline std::optional<Path> path_e(const RootDatum& rd, const Path& p, int i) {
  long long m = p.min_height_int(i);
  if (m == 0) return std::nullopt;  // eps = -m

  const auto& segs = p.segments();
  auto h = p.heights(i);
  const Rat target(m + 1);
  size_t t1 = 0;
  while (h[t1] != Rat(m)) ++t1;

  // scan segments backwards from t1 for the latest time the height is m+1;
  // a strictly interior crossing splits that segment
  std::vector<RatWeight> work = segs;
  size_t t0 = SIZE_MAX;
  for (size_t s = t1; s-- > 0;) {
    if (h[s + 1] == target) {
      t0 = s + 1;
      break;
    }
    const Rat lo = h[s], hi = h[s + 1];
    if ((lo < target && hi > target) || (lo > target && hi < target)) {
      Rat frac = (target - lo) / (hi - lo);
      RatWeight first = frac * segs[s];
      RatWeight second = segs[s] - first;
      work.clear();
      work.insert(work.end(), segs.begin(), segs.begin() + s);
      work.push_back(first);
      work.push_back(second);
      work.insert(work.end(), segs.begin() + s + 1, segs.end());
      t0 = s + 1;
      t1 += 1;  // one extra breakpoint inserted before t1
      break;
    }
  }
  if (t0 == SIZE_MAX) {
    if (h[0] != target) throw Error("raising cut not found");
    t0 = 0;
  }

  std::vector<RatWeight> out;
  out.reserve(work.size());
  for (size_t k = 0; k < t0; ++k) out.push_back(work[k]);
  for (size_t k = t0; k < t1; ++k) out.push_back(rd.reflect(work[k], i));
  for (size_t k = t1; k < work.size(); ++k) out.push_back(work[k]);
  return Path(std::move(out));
}

}  // namespace qcrystal
