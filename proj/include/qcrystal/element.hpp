#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/path.hpp"

namespace qcrystal {

// Tensor rule convention. Kashiwara: f goes left iff phi(left) > eps(right),
// e goes left iff phi(left) >= eps(right). Reversed is the rule transported
// through the flip (the opposite coproduct): f goes left iff
// eps(left) >= phi(right), e goes left iff eps(left) > phi(right), with the
// eps/phi statistics flipped accordingly. If tensor-level checks ever fail
// systematically left/right-swapped, this flag is the designated switch.
// Set it before constructing elements; statistics are cached at construction.
enum class TensorRule { Kashiwara, Reversed };

inline TensorRule g_tensor_rule = TensorRule::Kashiwara;

// Crystal element: a highest weight path, the dual of an element (realizing
// lowest weight crystals), a tensor pair, or a weight-shift token with
// eps = phi = -infinity. Immutable value; equality via the canonical
// serialization.
class CrystalElement {
 public:
  enum class Kind { PathElt, Dual, Tensor, Token };

  CrystalElement() = default;  // empty handle, for container plumbing only
  bool valid() const { return (bool)node_; }

  static CrystalElement highest(const RootDatum& rd, const Weight& lambda) {
    if (!lambda.is_dominant()) throw NotDominant(lambda.str());
    return path_elt(rd, Path::straight(lambda), lambda);
  }

  static CrystalElement path_elt(const RootDatum& rd, Path p, Weight shape) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::PathElt;
    n->path = std::move(p);
    n->shape = std::move(shape);
    n->wt = n->path.segments().empty() ? rd.zero_weight() : n->path.weight(rd);
    n->eps.resize(rd.rank());
    n->phi.resize(rd.rank());
    for (int i = 0; i < rd.rank(); ++i) {
      n->eps[i] = ExtInt(path_eps(n->path, i));
      n->phi[i] = ExtInt(path_phi(n->path, i));
    }
    n->ser = "P(" + n->shape.str() + ")" + n->path.str();
    return CrystalElement(std::move(n));
  }

  static CrystalElement dual(const CrystalElement& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Dual;
    n->a = b.node_;
    n->wt = -b.wt();
    const size_t k = b.node_->eps.size();
    n->eps.resize(k);
    n->phi.resize(k);
    for (size_t i = 0; i < k; ++i) {
      n->eps[i] = b.node_->phi[i];
      n->phi[i] = b.node_->eps[i];
    }
    n->ser = "D{" + b.ser() + "}";
    return CrystalElement(std::move(n));
  }

  static CrystalElement tensor(const CrystalElement& a, const CrystalElement& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Tensor;
    n->a = a.node_;
    n->b = b.node_;
    n->wt = a.wt() + b.wt();
    const size_t k = a.node_->eps.size();
    n->eps.resize(k);
    n->phi.resize(k);
    for (size_t i = 0; i < k; ++i) {
      if (g_tensor_rule == TensorRule::Kashiwara) {
        n->eps[i] = max(a.eps(i), b.eps(i) + (-a.wt().h[i]));
        n->phi[i] = max(b.phi(i), a.phi(i) + b.wt().h[i]);
      } else {
        n->eps[i] = max(b.eps(i), a.eps(i) + (-b.wt().h[i]));
        n->phi[i] = max(a.phi(i), b.phi(i) + a.wt().h[i]);
      }
    }
    n->ser = "(" + a.ser() + ")x(" + b.ser() + ")";
    return CrystalElement(std::move(n));
  }

  static CrystalElement token(const RootDatum& rd, const Weight& lambda) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Token;
    n->wt = lambda;
    n->eps.assign(rd.rank(), ExtInt::neg_inf());
    n->phi.assign(rd.rank(), ExtInt::neg_inf());
    n->ser = "T(" + lambda.str() + ")";
    return CrystalElement(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  const Weight& wt() const { return node_->wt; }
  ExtInt eps(int i) const { return node_->eps[i]; }
  ExtInt phi(int i) const { return node_->phi[i]; }
  const Path& path() const { return node_->path; }
  const Weight& shape() const { return node_->shape; }
  CrystalElement left() const { return CrystalElement(node_->a); }
  CrystalElement right() const { return CrystalElement(node_->b); }
  CrystalElement inner() const { return CrystalElement(node_->a); }

  const std::string& ser() const { return node_->ser; }

  friend bool operator==(const CrystalElement& x, const CrystalElement& y) {
    return x.ser() == y.ser();
  }
  friend bool operator!=(const CrystalElement& x, const CrystalElement& y) {
    return !(x == y);
  }
  friend bool operator<(const CrystalElement& x, const CrystalElement& y) {
    return x.ser() < y.ser();
  }

 private:
  struct Node {
    Kind kind = Kind::Token;
    Path path;    // PathElt
    Weight shape; // PathElt
    std::shared_ptr<const Node> a, b;  // Dual: a; Tensor: a, b
    Weight wt;
    std::vector<ExtInt> eps, phi;
    std::string ser;  // canonical text form, fixed at construction
  };

  explicit CrystalElement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

inline std::optional<CrystalElement> crystal_f(const RootDatum& rd, const CrystalElement& x,
                                               int i);
inline std::optional<CrystalElement> crystal_e(const RootDatum& rd, const CrystalElement& x,
                                               int i);

inline std::optional<CrystalElement> crystal_f(const RootDatum& rd, const CrystalElement& x,
                                               int i) {
  switch (x.kind()) {
    case CrystalElement::Kind::PathElt: {
      auto p = path_f(rd, x.path(), i);
      if (!p) return std::nullopt;
      return CrystalElement::path_elt(rd, std::move(*p), x.shape());
    }
    case CrystalElement::Kind::Dual: {
      auto y = crystal_e(rd, x.inner(), i);
      if (!y) return std::nullopt;
      return CrystalElement::dual(*y);
    }
    case CrystalElement::Kind::Tensor: {
      const bool left = (g_tensor_rule == TensorRule::Kashiwara)
                            ? x.left().phi(i) > x.right().eps(i)
                            : x.left().eps(i) >= x.right().phi(i);
      if (left) {
        auto y = crystal_f(rd, x.left(), i);
        if (!y) return std::nullopt;
        return CrystalElement::tensor(*y, x.right());
      }
      auto y = crystal_f(rd, x.right(), i);
      if (!y) return std::nullopt;
      return CrystalElement::tensor(x.left(), *y);
    }
    case CrystalElement::Kind::Token:
      return std::nullopt;
  }
  return std::nullopt;
}

inline std::optional<CrystalElement> crystal_e(const RootDatum& rd, const CrystalElement& x,
                                               int i) {
  switch (x.kind()) {
    case CrystalElement::Kind::PathElt: {
      auto p = path_e(rd, x.path(), i);
      if (!p) return std::nullopt;
      return CrystalElement::path_elt(rd, std::move(*p), x.shape());
    }
    case CrystalElement::Kind::Dual: {
      auto y = crystal_f(rd, x.inner(), i);
      if (!y) return std::nullopt;
      return CrystalElement::dual(*y);
    }
    case CrystalElement::Kind::Tensor: {
      const bool left = (g_tensor_rule == TensorRule::Kashiwara)
                            ? x.left().phi(i) >= x.right().eps(i)
                            : x.left().eps(i) > x.right().phi(i);
      if (left) {
        auto y = crystal_e(rd, x.left(), i);
        if (!y) return std::nullopt;
        return CrystalElement::tensor(*y, x.right());
      }
      auto y = crystal_e(rd, x.right(), i);
      if (!y) return std::nullopt;
      return CrystalElement::tensor(x.left(), *y);
    }
    case CrystalElement::Kind::Token:
      return std::nullopt;
  }
  return std::nullopt;
}

// lowest element u_{-mu} of the lowest weight crystal, realized as the dual
// of the highest element of B(mu)
inline CrystalElement lowest_dual(const RootDatum& rd, const Weight& mu) {
  return CrystalElement::dual(CrystalElement::highest(rd, mu));
}

}  // namespace qcrystal
