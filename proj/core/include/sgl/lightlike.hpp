#pragma once

// Immersed lightlike submanifolds: frames (radical, screen, screen-transversal,
// lightlike transversal), Gauss-Weingarten splits for ∇̄, ∇̄*, D̃ and the
// induced-object relations.
//
// Frames are smooth fields in the parameter u. Every basis choice is a
// NullGauge (or index selection) fitted once at an anchor point and replayed at
// other points with any scalar type; derivatives of frame vectors then come
// from evaluating the same construction on first-order duals.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sgl/qs_connection.hpp"
#include "sgl/sampling.hpp"

namespace sgl {

/// u -> X(u) from R^m to the ambient chart, with a parameter box.
struct Immersion {
  std::string name;
  SmoothMap map;  // needs second-order rules: frame derivatives use the Jacobian's derivative
  Box box;

  int param_dim() const { return map.domain_dim(); }
  int ambient_dim() const { return map.codomain_dim(); }
  VecX operator()(const VecX& u) const { return map(u); }
};

/// All per-point data of a lightlike frame. Column blocks are ambient vectors.
template <class T>
struct FrameT {
  using Scalar = T;

  Vec<T> u;
  Vec<T> p;
  Mat<T> J;              // D x m tangent frame ∂X/∂u
  Mat<T> g;              // D x D ambient metric at p
  Mat<T> rad_params;     // m x r, parameter coefficients of ξ
  Mat<T> xi;             // D x r radical basis
  Mat<T> ltr;            // D x r lightlike transversal basis N′
  Mat<T> screen_params;  // m x (m-r)
  Mat<T> screen;         // D x (m-r)
  Mat<T> stv;            // D x s screen-transversal basis W
  Mat<T> full;           // [J | N′ | W], square

  bool has_contact = false;
  Mat<T> phi;
  Vec<T> eta;
  Vec<T> nu;

  bool has_sgl = false;
  Mat<T> e0;      // D x dim E₀
  Mat<T> eprime;  // D x dim E′

  int m() const { return static_cast<int>(J.cols()); }
  int r() const { return static_cast<int>(xi.cols()); }
  int s() const { return static_cast<int>(stv.cols()); }
  int dim() const { return static_cast<int>(p.size()); }
};

using Frame = FrameT<double>;

// ---- templated frame algebra ------------------------------------------------

template <class T>
T inner(const FrameT<T>& f, const Vec<T>& a, const Vec<T>& b) {
  return a.dot(f.g * b);
}

/// Coefficients of v against [J | N′ | W].
template <class T>
Vec<T> frame_coords(const FrameT<T>& f, const Vec<T>& v) {
  return solve<T>(f.full, v);
}

template <class T>
Vec<T> tangent_part(const FrameT<T>& f, const Vec<T>& v) {
  const Vec<T> c = frame_coords(f, v);
  return f.J * c.head(f.m());
}

template <class T>
Vec<T> ltr_part(const FrameT<T>& f, const Vec<T>& v) {
  const Vec<T> c = frame_coords(f, v);
  return f.ltr * c.segment(f.m(), f.r());
}

template <class T>
Vec<T> stv_part(const FrameT<T>& f, const Vec<T>& v) {
  const Vec<T> c = frame_coords(f, v);
  return f.stv * c.tail(f.s());
}

template <class T>
Vec<T> transversal_part(const FrameT<T>& f, const Vec<T>& v) {
  return v - tangent_part(f, v);
}

/// Radical component of a tangent vector: Σ ρ̃(v, N′_i) ξ_i.
template <class T>
Vec<T> radical_part(const FrameT<T>& f, const Vec<T>& v) {
  return f.xi * (f.ltr.transpose() * (f.g * v));
}

/// Screen component of a tangent vector.
template <class T>
Vec<T> screen_part(const FrameT<T>& f, const Vec<T>& v) {
  return v - radical_part(f, v);
}

/// ρ̃-orthogonal projection onto span(B) for a nondegenerate block B.
template <class T>
Vec<T> gram_projection(const FrameT<T>& f, const Mat<T>& b, const Vec<T>& v) {
  if (b.cols() == 0) return Vec<T>::Zero(v.size());
  const Mat<T> gram = b.transpose() * f.g * b;
  const Vec<T> rhs = b.transpose() * (f.g * v);
  return b * solve<T>(gram, rhs);
}

/// Parts of the decomposition X = P₀X + P₁X + QX + η(X)ν of a tangent vector:
/// E₀, radical, E′ and the ν line.
template <class T>
std::array<Vec<T>, 4> sgl_components(const FrameT<T>& f, const Vec<T>& v) {
  const Vec<T> rad = radical_part(f, v);
  const Vec<T> scr = v - rad;
  const T e = f.eta.dot(scr);
  return {gram_projection(f, f.e0, scr), rad, gram_projection(f, f.eprime, scr), Vec<T>(e * f.nu)};
}

/// Which tangent subbundle a projection targets.
enum class Distribution { E0, E0_nu, E, E_nu, Eprime, Eprime_nu, radical, screen, tangent };

std::string to_string(Distribution d);

template <class T>
Vec<T> project(const FrameT<T>& f, Distribution d, const Vec<T>& v) {
  switch (d) {
    case Distribution::tangent:
      return v;
    case Distribution::radical:
      return radical_part(f, v);
    case Distribution::screen:
      return screen_part(f, v);
    default:
      break;
  }
  const auto c = sgl_components(f, v);
  switch (d) {
    case Distribution::E0: return c[0];
    case Distribution::E0_nu: return Vec<T>(c[0] + c[3]);
    case Distribution::E: return Vec<T>(c[0] + c[1]);
    case Distribution::E_nu: return Vec<T>(c[0] + c[1] + c[3]);
    case Distribution::Eprime: return c[2];
    case Distribution::Eprime_nu: return Vec<T>(c[2] + c[3]);
    default: return v;
  }
}

// ---- fields along N ---------------------------------------------------------

/// A vector field along the immersion, given as a rule on frames so that it
/// can be evaluated at a point (double frame) and differentiated in u (dual
/// frame). Rules are generic lambdas `[](const auto& f) { ... }`.
class FieldAlongN {
 public:
  FieldAlongN() = default;

  template <class F>
  explicit FieldAlongN(F rule, std::string label = {}) : label_(std::move(label)) {
    auto shared = std::make_shared<F>(std::move(rule));
    f0_ = [shared](const FrameT<double>& f) { return Vec<double>((*shared)(f)); };
    f1_ = [shared](const FrameT<D1>& f) { return Vec<D1>((*shared)(f)); };
  }

  template <class T>
  Vec<T> at(const FrameT<T>& f) const {
    if constexpr (std::is_same_v<T, double>) return f0_(f);
    else return f1_(f);
  }

  const std::string& label() const { return label_; }

  static FieldAlongN coordinate(int k);
  static FieldAlongN radical(int i);
  static FieldAlongN ltr(int i);
  static FieldAlongN screen_transversal(int a);
  static FieldAlongN nu();
  /// X(u) = J(u) a(u) with a parameter-space field a(u) = a0 + B u.
  static FieldAlongN parameter_affine(const VecX& a0, const MatX& b);
  /// Π_d(∂u_k).
  static FieldAlongN section(Distribution d, int k);
  /// φY and its tangential (T) and transversal (w, B, C) parts.
  static FieldAlongN phi_of(const FieldAlongN& y);
  static FieldAlongN tangential_of(const FieldAlongN& y);
  static FieldAlongN transversal_of(const FieldAlongN& y);
  static FieldAlongN T_of(const FieldAlongN& y);
  static FieldAlongN w_of(const FieldAlongN& y);
  static FieldAlongN project_of(Distribution d, const FieldAlongN& y);
  static FieldAlongN scaled(double c, const FieldAlongN& y);

 private:
  std::function<Vec<double>(const FrameT<double>&)> f0_;
  std::function<Vec<D1>(const FrameT<D1>&)> f1_;
  std::string label_;
};

// ---- frame construction -----------------------------------------------------

struct FrameOptions {
  double rank_tol = 1e-9;      // relative singular-value threshold
  bool phi_adapted = true;     // φ-adapted ltr when the radical is φ-invariant
  bool build_sgl = true;       // E₀ and E′ when possible
};

/// Basis choices fitted at the anchor point.
struct FrameGauge {
  NullGauge radical;
  bool phi_adapted = false;
  std::vector<int> complex_selection;  // radical columns i giving the basis {ξ_i, φξ_i}
  MatX stv_seed;  // anchor null vectors, re-projected g-orthogonally at each point
  bool sgl = false;
  NullGauge screen_ker_eta;
  NullGauge e0;
  NullGauge eprime;
  int radical_rank = 0;
  std::string sgl_skip_reason;
};

class FrameBuilder {
 public:
  /// Fits all gauges at `anchor`. Throws ImmersionError on a rank-deficient
  /// Jacobian and FrameError on ill-conditioned pairings.
  FrameBuilder(Immersion imm, AmbientStructure amb, const VecX& anchor, FrameOptions opt = {});

  const Immersion& immersion() const { return imm_; }
  const AmbientStructure& ambient() const { return amb_; }
  const FrameGauge& gauge() const { return gauge_; }
  const FrameOptions& options() const { return opt_; }
  const VecX& anchor() const { return anchor_; }

  /// Frame at u. For double input the radical rank is checked against the
  /// anchor (ClassificationError when it differs).
  template <class T>
  FrameT<T> build(const Vec<T>& u) const;

  Frame operator()(const VecX& u) const { return build<double>(u); }

  /// Frame whose dual parts are derivatives along the parameter direction k.
  FrameT<D1> build_along(const VecX& u, const VecX& k) const { return build<D1>(seeded(u, k)); }

 private:
  template <class T>
  FrameT<T> construct(const Vec<T>& u, FrameGauge* fit) const;

  Immersion imm_;
  AmbientStructure amb_;
  FrameOptions opt_;
  VecX anchor_;
  FrameGauge gauge_;
};

extern template FrameT<double> FrameBuilder::build<double>(const Vec<double>&) const;
extern template FrameT<D1> FrameBuilder::build<D1>(const Vec<D1>&) const;

/// Jacobian columns at u. Throws ImmersionError when rank < m.
MatX tangent_frame(const Immersion& imm, const VecX& u, double rank_tol = 1e-9);

struct RadicalInfo {
  int rank = 0;
  MatX basis;       // D x r, orthonormal (Euclidean) null directions pushed forward
  MatX params;      // m x r
  VecX singular_values;
};

/// Null space of the induced Gram matrix ρ̃(∂_iX, ∂_jX) at u (SVD, relative threshold).
RadicalInfo radical_distribution(const Immersion& imm, const MetricField& g, const VecX& u,
                                 double rank_tol = 1e-9);

/// Radical ranks at the given points; throws ClassificationError when they differ.
int radical_rank_over(const Immersion& imm, const MetricField& g, const std::vector<VecX>& us,
                      double rank_tol = 1e-9);

// ---- point context and decompositions ---------------------------------------

/// Which ambient connection to differentiate with.
enum class Conn { levi_civita, nabla, nabla_star, qs };

std::string to_string(Conn c);

/// Frame data at one parameter point: the double frame, dual frames along each
/// coordinate direction, and the ambient Christoffel symbols.
class PointContext {
 public:
  PointContext(const FrameBuilder& b, const VecX& u);

  const FrameBuilder& builder() const { return *b_; }
  const Frame& frame() const { return f_; }
  const FrameT<D1>& dframe(int k) const { return df_[k]; }
  const Christoffel& gamma() const { return gam_; }
  const VecX& u() const { return u_; }

  VecX value(const FieldAlongN& y) const { return y.at(f_); }
  /// Parameter coordinates of a tangent vector; UsageError if it is not tangent.
  VecX param_coords(const VecX& tangent) const;
  /// Derivative of Y along the tangent vector X (componentwise, in u).
  VecX derivative(const FieldAlongN& y, const VecX& x) const;
  /// [X, Y] for tangent fields.
  VecX bracket(const FieldAlongN& x, const FieldAlongN& y) const;
  /// Ambient covariant derivative of Y along the tangent vector X.
  VecX connection(Conn c, const VecX& x, const FieldAlongN& y) const;
  VecX connection(Conn c, const FieldAlongN& x, const FieldAlongN& y) const {
    return connection(c, value(x), y);
  }
  /// K(x, y) at the point.
  VecX K(const VecX& x, const VecX& y) const;

 private:
  const FrameBuilder* b_;
  VecX u_;
  Frame f_;
  std::vector<FrameT<D1>> df_;
  Christoffel gam_;
  MatX jpinv_;
};

/// Tangential, lightlike-transversal and screen-transversal parts of an
/// ambient vector; their sum reconstructs it.
struct GaussWeingartenParts {
  VecX tangential;
  VecX ltr;
  VecX screen_transversal;
  VecX total;
};

GaussWeingartenParts split(const Frame& f, const VecX& v);

/// conn_X Y = tangential + h^l(X,Y) + h^s(X,Y).
GaussWeingartenParts gauss_decompose(const PointContext& ctx, Conn c, const FieldAlongN& x,
                                     const FieldAlongN& y);

/// conn_X V = −A_V X + (ltr part) + (screen-transversal part) for a transversal
/// field V. Throws UsageError when V is not in ltr ⊕ S(TN⊥) at the point.
GaussWeingartenParts weingarten_decompose(const PointContext& ctx, Conn c, const FieldAlongN& x,
                                          const FieldAlongN& v);

/// Screen/radical split of induced derivatives.
struct ScreenSplit {
  VecX screen;   // D′_X PY (resp. −Ã′_ξ X)
  VecX radical;  // h̃′(X,PY) (resp. ∇̃′ᵗ_X ξ)
};

/// Splits the induced derivative (tangential part of conn_X Y) into screen and
/// radical parts.
ScreenSplit screen_split(const PointContext& ctx, Conn c, const FieldAlongN& x,
                         const FieldAlongN& y);

/// Tangent test fields along N: `count` parameter-affine fields from `seed`.
std::vector<FieldAlongN> tangent_test_fields(int m, int count, std::uint64_t seed);

/// Frame contract: radical rank, ltr pairings, orthogonality, screen
/// conditioning, reconstruction, and agreement of frame derivatives with
/// central differences.
std::vector<ResidualReport> check_frames(const FrameBuilder& b, const std::vector<VecX>& us,
                                         int threads = 1, std::uint64_t seed = 23);

/// Induced-object relations between the ∇̄, ∇̄* and D̃ decompositions.
std::vector<ResidualReport> check_induced_relations(const FrameBuilder& b,
                                                    const std::vector<VecX>& us,
                                                    double tol = 1e-6, int threads = 1,
                                                    std::uint64_t seed = 29);

}  // namespace sgl
