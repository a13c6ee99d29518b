#pragma once

// Built-in ambient models, the seven-parameter SGL example and small controls.

#include <string>
#include <vector>

#include "sgl/lightlike.hpp"
#include "sgl/qs_connection.hpp"

namespace sgl {

/// Flat indefinite Sasakian model on R^(2n+1), coordinates (x^1..x^n, y^1..y^n, z),
/// index 2q (the first q pairs are timelike):
///   η = ½(dz − Σ ε_i y^i dx^i),  ν = 2∂z,
///   ρ̃ = η⊗η + ¼ Σ ε_i ((dx^i)² + (dy^i)²),
///   φ∂x^i = −∂y^i,  φ∂y^i = ∂x^i + ε_i y^i ∂z,
/// with ε_i = −1 for i ≤ q and +1 otherwise, and K = λ η⊗η⊗ν.
AmbientStructure build_ambient(int n, int q, double lambda);

/// Ambient coordinate slot order used to place the example's 13-tuple.
enum class SlotMapping { basis_order, interleaved };

SlotMapping parse_mapping(const std::string& name);
std::string to_string(SlotMapping m);

/// The example immersion into build_ambient(6, 3, ·):
///   X(u) = (0, u5 cos α, −u5, −u6, u1 cosh α, u2 cosh α, u1 sinh α − u2,
///           u1 + u2 sinh α, u5 sin α, u6 sin α, sin u3 sinh u4, cos u3 cosh u4, u7),
/// tuple slot k placed at ambient coordinate mapping[k].
Immersion build_example_submanifold(double alpha, SlotMapping mapping = SlotMapping::interleaved);

/// Expected outcomes of a catalog entry, re-derived at run time, never assumed.
struct ExpectedFlags {
  int radical_rank = -1;     // -1: not asserted
  bool sgl = false;
  int e0_dim = -1;
  int eprime_dim = -1;
  bool totally_geodesic = false;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  AmbientStructure ambient;
  Immersion immersion;
  ExpectedFlags expected;
};

/// Names: example_3_2, null_line, invariant_plane, geodesic_subspace.
std::vector<std::string> catalog_names();

/// Throws UsageError for unknown names. λ, α and mapping only affect entries
/// that use them.
CatalogEntry build_entry(const std::string& name, double lambda = 0.3, double alpha = 0.4,
                         SlotMapping mapping = SlotMapping::interleaved);

/// Controls: null_line, invariant_plane, geodesic_subspace.
CatalogEntry build_control(const std::string& name, double lambda = 0.3);

}  // namespace sgl
