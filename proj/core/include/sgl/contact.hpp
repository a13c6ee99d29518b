#pragma once

// Almost contact metric triple (φ, ν, η) with its contact, Sasakian and
// Sasakian statistical verifiers.

#include <vector>

#include "sgl/statistical.hpp"

namespace sgl {

struct ContactTriple {
  MetricField g;
  TensorField11 phi;
  VectorField nu;
  OneForm eta;

  int dim() const { return g.dim(); }
};

/// φν = 0, η∘φ = 0, η(ν) = 1, ρ̃(ν,ν) = 1, ρ̃(X,ν) = η(X), φ² = −I + η⊗ν,
/// skew-symmetry of φ, the compatibility ρ̃(φX,φY) = ρ̃(X,Y) − η(X)η(Y) and
/// ρ̃(X,φY) = ½ dη(X,Y). An informational entry reports the fitted ratio
/// ρ̃(X,φY)/dη(X,Y), which pins the dη convention.
std::vector<ResidualReport> check_contact_metric(const ContactTriple& t,
                                                 const std::vector<VecX>& samples,
                                                 double tol = 1e-8, int threads = 1,
                                                 std::uint64_t field_seed = 11);

/// ∇°_X ν = −φX, (∇°_X φ)Y = ρ̃(X,Y)ν − η(Y)X and normality N_φ + dη⊗ν = 0.
std::vector<ResidualReport> check_sasakian(const ContactTriple& t, const std::vector<VecX>& samples,
                                           double tol = 1e-8, int threads = 1,
                                           std::uint64_t field_seed = 13);

/// K(X,φY) + φK(X,Y) = 0, ∇̄_X φY − φ∇̄*_X Y = ρ̃(X,Y)ν − η(Y)X,
/// ∇̄_X ν = −φX + ρ̃(∇̄_X ν, ν)ν, the same two with ∇̄ and ∇̄* swapped, and
/// ρ̃(∇̄_X ν, ν) = η(∇̄_X ν).
std::vector<ResidualReport> check_sasakian_statistical(const ContactTriple& t,
                                                       const StatisticalStructure& s,
                                                       const std::vector<VecX>& samples,
                                                       double tol = 1e-8, int threads = 1,
                                                       std::uint64_t field_seed = 17);

}  // namespace sgl
