#pragma once

// Screen generic lightlike (SGL) structure: classification, the splits
// X = P₀X + P₁X + QX + η(X)ν and φ = T + w, φ = B + C, and verifiers for the
// integrability, parallelism and geodesicity theorems and the lemma splits.
//
// Theorem checks compare a direct measure with the stated equivalent
// condition at each sample point. Both are maxima over section pairs of the
// distributions involved; sections are projected coordinate fields Π_d(∂u_k)
// that are independent at the anchor.

#include <string>
#include <vector>

#include "sgl/lightlike.hpp"

namespace sgl {

/// Worst case over the sample points.
struct SGLClassification {
  int radical_rank = 0;
  bool lightlike = false;             // r ≥ 1
  bool has_contact = false;
  bool nu_tangent = false;
  bool radical_invariant = false;     // φ(Rad) = Rad
  double radical_invariance_defect = 0.0;
  bool e0_nondegenerate = false;
  double e0_condition = 0.0;
  int e0_dim = 0;
  int eprime_dim = 0;
  bool eprime_trivial = false;        // invariant case
  bool w_eprime_in_stv = false;       // w(E′) ⊂ S(TN⊥), nontrivial
  bool sgl = false;                   // lightlike, radical invariant, E₀ nondegenerate
  std::string reason;                 // why sgl is false
};

/// Throws ClassificationError when the radical rank varies across samples.
SGLClassification classify_sgl(const FrameBuilder& b, const std::vector<VecX>& us);

/// (P₀X, P₁X, QX, η(X)) of a tangent vector.
struct TangentDecomposition {
  VecX p0, p1, q;
  double eta = 0.0;
};

TangentDecomposition decompose_tangent(const Frame& f, const VecX& x);

/// φv split into tangential and transversal parts: (T, w) for tangent v,
/// (B, C) for transversal v.
struct PhiSplit {
  VecX tangential;
  VecX transversal;
};

PhiSplit phi_split(const Frame& f, const VecX& v);

/// Projected coordinate fields Π_d(∂u_k), keeping those independent at the anchor.
std::vector<FieldAlongN> distribution_sections(const FrameBuilder& b, Distribution d);

/// Classification flags, defining invariants and the φ-split identities.
std::vector<ResidualReport> check_sgl(const FrameBuilder& b, const std::vector<VecX>& us,
                                      double tol = 1e-6, int threads = 1,
                                      std::uint64_t seed = 31);

/// E₀, E₀⊥ν, E, E⊥ν, E′ and E′⊥ν integrability theorems.
std::vector<ResidualReport> check_integrability(const FrameBuilder& b, const std::vector<VecX>& us,
                                                double tol = 1e-6, int threads = 1);

/// E, E⊥ν, E′ and E′⊥ν parallelism theorems.
std::vector<ResidualReport> check_parallelism(const FrameBuilder& b, const std::vector<VecX>& us,
                                              double tol = 1e-6, int threads = 1);

/// Totally geodesic foliation and the two mixed-geodesic theorems.
std::vector<ResidualReport> check_geodesic(const FrameBuilder& b, const std::vector<VecX>& us,
                                           double tol = 1e-6, int threads = 1);

/// The three lemma splits and the E₀/E′ tangential formula.
std::vector<ResidualReport> check_lemma_splits(const FrameBuilder& b, const std::vector<VecX>& us,
                                               double tol = 1e-6, int threads = 1,
                                               std::uint64_t seed = 37);

}  // namespace sgl
