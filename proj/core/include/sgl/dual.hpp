#pragma once

/// Forward-mode dual numbers.
///
/// A Dual<T> carries a value and one directional derivative. Nesting
/// (Dual<Dual<double>>) gives exact second directional derivatives, which is
/// all the geometry code needs: every identity it checks involves at most two
/// derivatives of the input fields.

#include <cmath>
#include <ostream>
#include <type_traits>

#include <Eigen/Core>

namespace sgl {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative along the seeded direction

  Dual() = default;
  Dual(double x) : v(x), d(0.0) {}  // NOLINT: implicit lift of constants
  Dual(T value, T deriv) : v(value), d(deriv) {}

  template <class U, std::enable_if_t<std::is_same_v<U, T> && !std::is_same_v<U, double>, int> = 0>
  Dual(const U& value) : v(value), d(0.0) {}  // NOLINT

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};
template <class T> inline constexpr bool is_dual_v = is_dual<T>::value;

template <class T>
concept Scalar = std::is_same_v<T, double> || is_dual_v<T>;

inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T> Dual<T> operator+(Dual<T> a, double b) { a.v += b; return a; }
template <class T> Dual<T> operator+(double b, Dual<T> a) { a.v += b; return a; }
template <class T> Dual<T> operator-(Dual<T> a, double b) { a.v -= b; return a; }
template <class T> Dual<T> operator-(double b, const Dual<T>& a) { return {b - a.v, -a.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(double b, const Dual<T>& a) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(double b, const Dual<T>& a) { return Dual<T>(b) / a; }

// Comparisons look at the value only; they drive pivoting and branch choices.
template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> bool operator<=(const Dual<T>& a, const Dual<T>& b) { return value_of(a) <= value_of(b); }
template <class T> bool operator>=(const Dual<T>& a, const Dual<T>& b) { return value_of(a) >= value_of(b); }
template <class T> bool operator==(const Dual<T>& a, const Dual<T>& b) { return a.v == b.v && a.d == b.d; }
template <class T> bool operator!=(const Dual<T>& a, const Dual<T>& b) { return !(a == b); }

template <class T> Dual<T> sin(const Dual<T>& a) { using std::sin, std::cos; return {sin(a.v), a.d * cos(a.v)}; }
template <class T> Dual<T> cos(const Dual<T>& a) { using std::sin, std::cos; return {cos(a.v), -(a.d * sin(a.v))}; }
template <class T> Dual<T> exp(const Dual<T>& a) { using std::exp; T e = exp(a.v); return {e, a.d * e}; }
template <class T> Dual<T> log(const Dual<T>& a) { using std::log; return {log(a.v), a.d / a.v}; }
template <class T> Dual<T> sinh(const Dual<T>& a) { using std::sinh, std::cosh; return {sinh(a.v), a.d * cosh(a.v)}; }
template <class T> Dual<T> cosh(const Dual<T>& a) { using std::sinh, std::cosh; return {cosh(a.v), a.d * sinh(a.v)}; }
template <class T> Dual<T> tan(const Dual<T>& a) {
  using std::tan;
  T t = tan(a.v);
  return {t, a.d * (1.0 + t * t)};
}
template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
template <class T> Dual<T> abs(const Dual<T>& a) { return value_of(a) < 0.0 ? -a : a; }
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
  using std::pow;
  if (p == 0.0) return Dual<T>(1.0);
  return {pow(a.v, p), a.d * (p * pow(a.v, p - 1.0))};
}

/// Lift a double into any scalar type with zero derivative parts.
template <Scalar T> T lift(double x) { return T(x); }

/// Seed x + eps*dir for a first-order directional derivative.
inline D1 seed(double x, double dir) { return {x, dir}; }

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& a) {
  return os << '(' << a.v << " + " << a.d << "e)";
}

}  // namespace sgl

namespace Eigen {

template <class T>
struct NumTraits<sgl::Dual<T>> : GenericNumTraits<sgl::Dual<T>> {
  using Real = sgl::Dual<T>;
  using NonInteger = sgl::Dual<T>;
  using Literal = sgl::Dual<T>;
  using Nested = sgl::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(1e-12); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<sgl::Dual<T>, double, BinaryOp> {
  using ReturnType = sgl::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<double, sgl::Dual<T>, BinaryOp> {
  using ReturnType = sgl::Dual<T>;
};

}  // namespace Eigen
