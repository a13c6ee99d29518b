#pragma once

// Statistical pair (∇̄, ∇̄*) = (∇° + K, ∇° − K) and its verifiers.

#include <vector>

#include "sgl/manifold.hpp"
#include "sgl/report.hpp"

namespace sgl {

/// Symmetric (1,2) tensor field; the map returns K^k_ij at flat index k + D(i + D j).
class DifferenceTensorK {
 public:
  DifferenceTensorK() = default;
  DifferenceTensorK(SmoothMap map, int dim);

  int dim() const { return dim_; }
  const SmoothMap& map() const { return map_; }

  /// K(x, y) at p.
  template <class T>
  Vec<T> apply(const Vec<T>& p, const Vec<T>& x, const Vec<T>& y) const {
    const Vec<T> flat = map_.eval<T>(p);
    Vec<T> out = Vec<T>::Zero(dim_);
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i < dim_; ++i) {
        const T xy = x(i) * y(j);
        if (value_of(xy) == 0.0 && !is_dual_v<T>) continue;
        for (int k = 0; k < dim_; ++k) out(k) += flat(k + dim_ * (i + dim_ * j)) * xy;
      }
    return out;
  }
  VecX operator()(const VecX& p, const VecX& x, const VecX& y) const { return apply<double>(p, x, y); }

  static DifferenceTensorK zero(int dim);
  /// K = λ η⊗η⊗ν.
  static DifferenceTensorK eta_eta_nu(const OneForm& eta, const VectorField& nu, double lambda);
  /// Adds eps to the single component K^a_bc (b != c), breaking symmetry.
  static DifferenceTensorK perturbed(const DifferenceTensorK& base, double eps, int a = 2,
                                     int b = 0, int c = 1);

 private:
  SmoothMap map_;
  int dim_ = 0;
};

struct StatisticalStructure {
  MetricField g;
  DifferenceTensorK k;

  /// The pair with K replaced by -K (∇̄ and ∇̄* swap roles).
  StatisticalStructure dual() const;
};

/// ∇̄_X Y = ∇°_X Y + K(X,Y) at p.
VecX nabla(const StatisticalStructure& s, const VectorField& x, const VectorField& y, const VecX& p);
/// ∇̄*_X Y = ∇°_X Y − K(X,Y) at p.
VecX nabla_star(const StatisticalStructure& s, const VectorField& x, const VectorField& y,
                const VecX& p);

/// Torsion of ∇̄ and ∇̄*, Codazzi symmetry of ∇̄g, duality, K symmetry and
/// self-adjointness, and ½(∇̄ + ∇̄*) = ∇°. Fields are seeded test fields.
std::vector<ResidualReport> check_statistical(const StatisticalStructure& s,
                                              const std::vector<VecX>& samples,
                                              double tol = 1e-8, int threads = 1,
                                              std::uint64_t field_seed = 7);

}  // namespace sgl
