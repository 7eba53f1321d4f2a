#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcrystal/errors.hpp"
#include "qcrystal/numeric.hpp"

namespace qcrystal {

// Integral weight in (h,d)-coordinates: values on the simple coroots h_i and
// on the derivation directions d_j completing them to a coweight basis.
struct Weight {
  std::vector<long long> h;
  std::vector<long long> d;

  Weight() = default;
  Weight(std::vector<long long> hh, std::vector<long long> dd = {})
      : h(std::move(hh)), d(std::move(dd)) {}

  static Weight zero(int n, int corank) {
    return Weight(std::vector<long long>(n, 0), std::vector<long long>(corank, 0));
  }

  bool is_dominant() const {
    for (long long x : h)
      if (x < 0) return false;
    return true;
  }
  // P0 = dominant weights vanishing on all simple coroots
  bool in_P0() const {
    for (long long x : h)
      if (x != 0) return false;
    return true;
  }
  bool is_zero() const {
    for (long long x : h)
      if (x) return false;
    for (long long x : d)
      if (x) return false;
    return true;
  }

  friend Weight operator+(const Weight& a, const Weight& b) {
    Weight r = a;
    for (size_t i = 0; i < r.h.size(); ++i) r.h[i] += b.h[i];
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] += b.d[i];
    return r;
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    Weight r = a;
    for (size_t i = 0; i < r.h.size(); ++i) r.h[i] -= b.h[i];
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] -= b.d[i];
    return r;
  }
  friend Weight operator-(const Weight& a) {
    Weight r = a;
    for (auto& x : r.h) x = -x;
    for (auto& x : r.d) x = -x;
    return r;
  }
  friend Weight operator*(long long k, const Weight& a) {
    Weight r = a;
    for (auto& x : r.h) x *= k;
    for (auto& x : r.d) x *= k;
    return r;
  }
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.h == b.h && a.d == b.d;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.h != b.h) return a.h < b.h;
    return a.d < b.d;
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
    if (!d.empty()) {
      s += ";";
      for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    }
    return s;
  }

  nlohmann::json to_json() const { return nlohmann::json{{"h", h}, {"d", d}}; }
  static Weight from_json(const nlohmann::json& j) {
    return Weight(j.at("h").get<std::vector<long long>>(),
                  j.value("d", std::vector<long long>{}));
  }
};

// Weight vector with rational coordinates; used for path segments.
struct RatWeight {
  std::vector<Rat> h;
  std::vector<Rat> d;

  RatWeight() = default;
  RatWeight(std::vector<Rat> hh, std::vector<Rat> dd) : h(std::move(hh)), d(std::move(dd)) {}
  explicit RatWeight(const Weight& w) {
    h.assign(w.h.begin(), w.h.end());
    d.assign(w.d.begin(), w.d.end());
  }
  static RatWeight zero(int n, int corank) {
    return RatWeight(std::vector<Rat>(n, Rat(0)), std::vector<Rat>(corank, Rat(0)));
  }

  bool is_zero() const {
    for (auto& x : h)
      if (x != 0) return false;
    for (auto& x : d)
      if (x != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (auto& x : h)
      if (!is_integer(x)) return false;
    for (auto& x : d)
      if (!is_integer(x)) return false;
    return true;
  }
  Weight to_weight() const {
    if (!is_integral()) throw IntegralityViolation("non-integral weight " + str());
    Weight w;
    for (auto& x : h) w.h.push_back(to_ll(rat_num(x)));
    for (auto& x : d) w.d.push_back(to_ll(rat_num(x)));
    return w;
  }

  friend RatWeight operator+(const RatWeight& a, const RatWeight& b) {
    RatWeight r = a;
    for (size_t i = 0; i < r.h.size(); ++i) r.h[i] += b.h[i];
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] += b.d[i];
    return r;
  }
  friend RatWeight operator-(const RatWeight& a, const RatWeight& b) {
    RatWeight r = a;
    for (size_t i = 0; i < r.h.size(); ++i) r.h[i] -= b.h[i];
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] -= b.d[i];
    return r;
  }
  friend RatWeight operator*(const Rat& c, const RatWeight& a) {
    RatWeight r = a;
    for (auto& x : r.h) x *= c;
    for (auto& x : r.d) x *= c;
    return r;
  }
  friend bool operator==(const RatWeight& a, const RatWeight& b) {
    return a.h == b.h && a.d == b.d;
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + rat_str(h[i]);
    if (!d.empty()) {
      s += ";";
      for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + rat_str(d[i]);
    }
    return s;
  }
};

}  // namespace qcrystal
