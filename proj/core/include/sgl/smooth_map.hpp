#pragma once

#include <functional>
#include <memory>
#include <type_traits>

#include "sgl/dual.hpp"
#include "sgl/linalg.hpp"

namespace sgl {

/// A differentiable map R^domain -> R^codomain with exact directional derivatives.
///
/// The rule is stored once per scalar type (double, first-order and nested
/// duals), which is how a single generic lambda gives values, first and second
/// derivatives. Maps built on top of frame computations only register the
/// first two levels; asking them for a second derivative is a usage error.
class SmoothMap {
 public:
  template <class T> using Fn = std::function<Vec<T>(const Vec<T>&)>;

  SmoothMap() = default;

  /// Registers `rule` for double, D1 and D2.
  template <class F>
  SmoothMap(int domain_dim, int codomain_dim, F rule)
      : domain_(domain_dim), codomain_(codomain_dim) {
    auto shared = std::make_shared<F>(std::move(rule));
    f0_ = [shared](const Vec<double>& x) { return Vec<double>((*shared)(x)); };
    f1_ = [shared](const Vec<D1>& x) { return Vec<D1>((*shared)(x)); };
    f2_ = [shared](const Vec<D2>& x) { return Vec<D2>((*shared)(x)); };
  }

  /// Registers `rule` for double and D1 only.
  template <class F>
  static SmoothMap first_order(int domain_dim, int codomain_dim, F rule) {
    SmoothMap m;
    m.domain_ = domain_dim;
    m.codomain_ = codomain_dim;
    auto shared = std::make_shared<F>(std::move(rule));
    m.f0_ = [shared](const Vec<double>& x) { return Vec<double>((*shared)(x)); };
    m.f1_ = [shared](const Vec<D1>& x) { return Vec<D1>((*shared)(x)); };
    return m;
  }

  int domain_dim() const { return domain_; }
  int codomain_dim() const { return codomain_; }
  bool has_second_order() const { return static_cast<bool>(f2_); }
  explicit operator bool() const { return static_cast<bool>(f0_); }

  template <class T>
  Vec<T> eval(const Vec<T>& x) const {
    check_domain(x.size());
    Vec<T> out;
    if constexpr (std::is_same_v<T, double>) {
      out = f0_(x);
    } else if constexpr (std::is_same_v<T, D1>) {
      out = f1_(x);
    } else if constexpr (std::is_same_v<T, D2>) {
      if (!f2_) throw UsageError("SmoothMap: second-order evaluation not available");
      out = f2_(x);
    } else {
      static_assert(std::is_same_v<T, double>, "unsupported scalar type");
    }
    if (out.size() != codomain_) throw StructuralError("SmoothMap: rule returned wrong codomain size");
    return out;
  }

  VecX operator()(const VecX& x) const { return eval<double>(x); }

  /// D_v f(x).
  VecX directional(const VecX& x, const VecX& v) const;

  /// D_v D_w f(x), exact through nested duals.
  VecX second_directional(const VecX& x, const VecX& v, const VecX& w) const;

  /// codomain x domain matrix of partial derivatives.
  MatX jacobian(const VecX& x) const;

  /// Jacobian at a dual point: entries are D1 with the outer seed's derivative.
  Mat<D1> jacobian(const Vec<D1>& x) const;

 private:
  void check_domain(Eigen::Index n) const {
    if (n != domain_) throw StructuralError("SmoothMap: point has wrong dimension");
  }

  int domain_ = 0;
  int codomain_ = 0;
  Fn<double> f0_;
  Fn<D1> f1_;
  Fn<D2> f2_;
};

/// Central finite-difference directional derivative, used as an oracle in tests
/// and in the finite-difference spot-check suite.
VecX central_difference(const SmoothMap& f, const VecX& x, const VecX& v, double step = 1e-5);

}  // namespace sgl
