#pragma once

// Ambient-space calculus on a single global chart: tensor fields as smooth
// maps, Lie brackets, the Levi-Civita connection, d of a 1-form and the
// Nijenhuis tensor of a (1,1) field.

#include <cstdint>
#include <vector>

#include "sgl/smooth_map.hpp"

namespace sgl {

/// Reshape a flat column-major vector into a rows x cols matrix.
template <class T>
Mat<T> reshape(const Vec<T>& flat, int rows, int cols) {
  if (flat.size() != rows * cols) throw StructuralError("reshape: size mismatch");
  return Eigen::Map<const Mat<T>>(flat.data(), rows, cols);
}

/// Flatten a matrix column-major.
template <class T>
Vec<T> flatten(const Mat<T>& m) {
  return Eigen::Map<const Vec<T>>(m.data(), m.size());
}

/// Symmetric bilinear form field of constant index.
class MetricField {
 public:
  MetricField() = default;
  /// `map` returns the D x D Gram matrix flattened column-major.
  MetricField(SmoothMap map, int index);

  int dim() const { return dim_; }
  int index() const { return index_; }
  const SmoothMap& map() const { return map_; }

  template <class T>
  Mat<T> at(const Vec<T>& p) const {
    return reshape<T>(map_.eval<T>(p), dim_, dim_);
  }
  MatX operator()(const VecX& p) const { return at<double>(p); }

  double inner(const VecX& p, const VecX& x, const VecX& y) const { return x.dot(at<double>(p) * y); }

  /// Number of negative eigenvalues of the Gram matrix at p.
  int signature_negatives(const VecX& p) const;

 private:
  SmoothMap map_;
  int dim_ = 0;
  int index_ = 0;
};

/// Vector field on the chart; components in the coordinate frame.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(SmoothMap map);

  int dim() const { return map_.domain_dim(); }
  const SmoothMap& map() const { return map_; }

  template <class T>
  Vec<T> at(const Vec<T>& p) const { return map_.eval<T>(p); }
  VecX operator()(const VecX& p) const { return map_(p); }

  /// A constant field. Makes extension of a point vector explicit.
  static VectorField constant(const VecX& v);
  /// The coordinate field d/dx^i.
  static VectorField coordinate(int dim, int i);

 private:
  SmoothMap map_;
};

/// 1-form; components against the coordinate frame.
class OneForm {
 public:
  OneForm() = default;
  explicit OneForm(SmoothMap map);

  int dim() const { return map_.domain_dim(); }
  const SmoothMap& map() const { return map_; }

  template <class T>
  Vec<T> at(const Vec<T>& p) const { return map_.eval<T>(p); }
  double apply(const VecX& p, const VecX& x) const { return map_(p).dot(x); }

 private:
  SmoothMap map_;
};

/// (1,1) tensor field, stored as a D x D matrix acting on column vectors.
class TensorField11 {
 public:
  TensorField11() = default;
  TensorField11(SmoothMap map, int dim);

  int dim() const { return dim_; }
  const SmoothMap& map() const { return map_; }

  template <class T>
  Mat<T> at(const Vec<T>& p) const { return reshape<T>(map_.eval<T>(p), dim_, dim_); }
  MatX operator()(const VecX& p) const { return at<double>(p); }

  static TensorField11 identity(int dim);

 private:
  SmoothMap map_;
  int dim_ = 0;
};

/// The field p -> A(p) X(p).
VectorField apply(const TensorField11& a, const VectorField& x);

/// Christoffel symbols of the second kind at a point: gamma[k](i, j) = Γ^k_ij.
struct Christoffel {
  std::vector<MatX> gamma;

  /// Γ(x, y)^k = sum_ij Γ^k_ij x^i y^j.
  VecX contract(const VecX& x, const VecX& y) const;
};

/// Koszul formula on coordinate fields, solved against g(p) with full pivoting.
/// Throws DegeneracyError when cond(g(p)) > 1e12.
Christoffel christoffel(const MetricField& g, const VecX& p);

/// [X, Y](p) = D_X Y - D_Y X.
VecX lie_bracket(const VectorField& x, const VectorField& y, const VecX& p);

/// Levi-Civita derivative of Y along X at p.
VecX levi_civita(const MetricField& g, const VectorField& x, const VectorField& y, const VecX& p);

/// Same, reusing precomputed symbols.
VecX levi_civita(const Christoffel& gamma, const VectorField& x, const VectorField& y, const VecX& p);

/// X(g(Y, Z)) at p.
double derivative_of_inner(const MetricField& g, const VectorField& x, const VectorField& y,
                           const VectorField& z, const VecX& p);

/// dη(X,Y) = X η(Y) - Y η(X) - η([X,Y]); no factor 1/2.
double exterior_derivative(const OneForm& eta, const VectorField& x, const VectorField& y,
                           const VecX& p);

/// Smooth, genuinely non-constant test fields
/// X^k(p) = a_k + sum_l B_kl p_l + c_k sin(p_{k+1}), coefficients uniform in [-1, 1].
std::vector<VectorField> test_fields(int dim, int count, std::uint64_t seed);

/// N_φ(X,Y) = [φX,φY] - φ[φX,Y] - φ[X,φY] + φ²[X,Y].
VecX nijenhuis(const TensorField11& phi, const VectorField& x, const VectorField& y,
               const VecX& p);

}  // namespace sgl
