#pragma once

// Quarter-symmetric metric connection D̃_X Y = ∇̄_X Y − K(X,Y) − η(X)φY.

#include <optional>
#include <vector>

#include "sgl/contact.hpp"

namespace sgl {

/// Everything an immersion needs from the ambient space. Contact data is
/// optional so plain semi-Riemannian controls fit the same pipeline.
struct AmbientStructure {
  std::string name;
  MetricField g;
  DifferenceTensorK k;
  std::optional<ContactTriple> contact;

  int dim() const { return g.dim(); }
  bool has_contact() const { return contact.has_value(); }
  StatisticalStructure statistical() const { return {g, k}; }
};

class QSConnection {
 public:
  /// `drop_eta_term` removes the −η(X)φY correction; only for negative controls.
  QSConnection(ContactTriple t, StatisticalStructure s, bool drop_eta_term = false);
  explicit QSConnection(const AmbientStructure& a, bool drop_eta_term = false);

  const ContactTriple& contact() const { return t_; }
  const StatisticalStructure& statistical() const { return s_; }
  bool drops_eta_term() const { return drop_; }

  /// Built from ∇̄: ∇̄_X Y − K(X,Y) − η(X)φY.
  VecX apply(const VectorField& x, const VectorField& y, const VecX& p) const;
  /// Built from ∇̄*: ∇̄*_X Y + K(X,Y) − η(X)φY.
  VecX apply_from_dual(const VectorField& x, const VectorField& y, const VecX& p) const;

  VecX apply(const Christoffel& gam, const VectorField& x, const VectorField& y, const VecX& p) const;

 private:
  ContactTriple t_;
  StatisticalStructure s_;
  bool drop_ = false;
};

VecX qs_apply(const QSConnection& c, const VectorField& x, const VectorField& y, const VecX& p);

/// D̃_X Y − D̃_Y X − [X,Y].
VecX qs_torsion(const QSConnection& c, const VectorField& x, const VectorField& y, const VecX& p);

/// Agreement of the two constructions, metric compatibility, the torsion
/// identity, (D̃_X φ)Y = ρ̃(X,Y)ν − η(Y)X, D̃_X ν = −φX + η(D̃_X ν)ν, torsion
/// antisymmetry and the consistency φ(D̃_X ν) = −(D̃_X φ)ν.
std::vector<ResidualReport> check_qs_axioms(const QSConnection& c, const std::vector<VecX>& samples,
                                            double tol = 1e-8, int threads = 1,
                                            std::uint64_t field_seed = 19);

}  // namespace sgl
