#pragma once

// The abelian and 2-nilpotent approximations as lattice quotients of real
// vector spaces:
//   Alb_1 = (pi / [pi]_2) \ (pi/[pi]_2 (x) R)
//   Alb_2 = (pi / [pi]_3) \ ((pi/[pi]_2 + [pi]_2/[pi]_3) (x) R)
// with the involution induced from the generator images. On normal-form
// coordinates the level-2 involution is (v, z) -> (tau v, tau_c z + phi(v)),
// phi(v) = 1/2 B(v, v) + L(v).

#include "nilsect/obstruction.hpp"

#include "json.hpp"

#include <optional>
#include <vector>

namespace nilsect {

/// Affine-quadratic self-map p -> linear * p + (1/2 v^T B_k v)_k + translation of
/// R^{n+c}, where the quadratic part depends only on the first n coordinates.
struct AffineQuadraticMap {
  RatMatrix linear;
  /// One symmetric n x n matrix per output coordinate (zero for the first n).
  std::vector<RatMatrix> quadratic;
  RatVector translation;

  RatVector apply(const RatVector& p) const;
};

class AlbModel {
 public:
  AlbModel(const EquivariantPi1Data& data, int level);

  int level() const { return level_; }
  Index base_rank() const { return n_; }
  Index fiber_rank() const { return level_ == 2 ? c_ : 0; }
  Index dimension() const { return base_rank() + fiber_rank(); }
  const EquivariantPi1Data& data() const { return data_; }

  const AffineQuadraticMap& involution() const { return involution_; }
  RatVector apply_involution(const RatVector& p) const { return involution_.apply(p); }

  /// Left action of the lattice element s(gamma_v) gamma_z.
  RatVector act(const IntVector& gamma_v, const IntVector& gamma_z, const RatVector& p) const;
  RatVector act(const IntVector& gamma_v, const RatVector& p) const;

  /// Projection to the level-1 coordinates.
  RatVector project(const RatVector& p) const { return p.head(n_); }

  /// Bilinear part B of phi for each center coordinate (level 2 only).
  const std::vector<RatMatrix>& quadratic_part() const { return involution_.quadratic; }
  /// Linear part L of phi, c x n (level 2 only).
  RatMatrix phi_linear() const;

  /// Pairing <v, w> extended to rational vectors.
  RatVector pairing(const RatVector& v, const RatVector& w) const;

 private:
  const EquivariantPi1Data& data_;
  int level_;
  Index n_, c_;
  RatMatrix pairing_tensor_;  // c x n^2, column i*n+j = <e_i, e_j>
  AffineQuadraticMap involution_;
};

AlbModel build_alb(const EquivariantPi1Data& data, int level);

struct FixedComponent {
  int level = 1;
  RatVector point;
  /// Directions of the subtorus through the point (a basis of Ker(tau - I)).
  RatMatrix directions;
  CohClass h1;
  /// Half-integer grid points of this component inside the unit cube.
  std::vector<RatVector> grid_points;
};

/// Connected components of the fixed locus of Alb_1, one per H^1 class.
std::vector<FixedComponent> fixed_components_alb1(const AlbModel& model);

struct LiftResult {
  bool lifts = false;
  /// Fixed point of Alb_2 over the component's point.
  std::optional<RatVector> witness;
  /// Translation part of the involution on the fiber torus when no fixed point exists.
  std::optional<RatVector> obstruction;
  /// Fiber map z -> tau_c z + t.
  RatVector fiber_translation;
};

LiftResult lifts_to_alb2(const AlbModel& model2, const FixedComponent& fc);

struct ReconcileRow {
  RatVector point;
  F2Vector h1;
  bool lifts = false;
  bool in_kernel = false;
  LiftResult lift;
};

struct ReconcileReport {
  std::vector<ReconcileRow> rows;
  Index components = 0;
  Index h1_order = 0;
  Index lifting = 0;
  bool count_matches = false;
  bool agrees = false;
};

ReconcileReport reconcile_with_delta2(const EquivariantPi1Data& data, const AlbModel& model1, const AlbModel& model2);

/// Vertices, edges and identifications of the fundamental domains and the fixed loci,
/// for external plotting.
nlohmann::ordered_json plot_data(const AlbModel& model1, const AlbModel& model2);

std::string rational_string(const Rational& q);
std::vector<std::string> rational_strings(const RatVector& v);

}  // namespace nilsect
