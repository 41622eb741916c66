#pragma once

// Combinatorial models of based real curves and their equivariant pi_1 data.
//
// A model is a list of smooth pieces glued at nodes. Each piece supplies its
// class-2 fundamental group with the involution (generator images) and, for
// every real component, a lift l with l * tau(l) = 1 whose abelianization is
// the kappa class of that component relative to the piece's base component.

#include "nilsect/nil2.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilsect {

/// Invalid model data: disconnected gluing graph, non-equivariant gluing, bad piece.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class PieceKind { proper, punctured };
enum class PunctureType { real, conjugate_pair };

struct RealComponent {
  std::string label;
  /// z-part in exterior-square coordinates of the piece.
  Nil2Element lift;

  bool operator==(const RealComponent&) const = default;
};

struct SmoothPiece {
  std::string name;
  PieceKind kind = PieceKind::proper;
  Index genus = 0;
  std::vector<PunctureType> punctures;
  Index ovals = 0;
  IntMatrix tau = IntMatrix(0, 0);
  /// Image of each generator, z-part in exterior-square coordinates.
  std::vector<Nil2Element> tau_images;
  std::vector<RealComponent> components;
  Index base_component = 0;

  /// Rank of H_1: 2g for proper pieces, 2g + (number of punctured points) - 1 otherwise.
  Index expected_rank() const;
  /// Columns are the central relations (the symplectic class for proper pieces of positive genus).
  IntMatrix relations() const;
  bool has_real_points() const { return !components.empty(); }

  friend bool operator==(const SmoothPiece& a, const SmoothPiece& b) {
    return a.name == b.name && a.kind == b.kind && a.genus == b.genus && a.punctures == b.punctures &&
           a.ovals == b.ovals && same_entries(a.tau, b.tau) && a.tau_images == b.tau_images &&
           a.components == b.components && a.base_component == b.base_component;
  }
};

enum class Orbit { fixed, swapped };

struct GluePoint {
  Index piece = 0;
  Orbit orbit = Orbit::fixed;
  /// Host real component of a fixed point; ignored for swapped points.
  Index component = 0;

  bool operator==(const GluePoint&) const = default;
};

/// `identify` joins two points (and with them their conjugates); `conjugate_self`
/// joins a non-real point x with tau(x).
enum class GlueRelation { identify, conjugate_self };

struct NodeGluing {
  GlueRelation relation = GlueRelation::identify;
  std::vector<GluePoint> points;

  bool operator==(const NodeGluing&) const = default;
};

struct ComponentRef {
  Index piece = 0;
  Index component = 0;

  bool operator==(const ComponentRef&) const = default;
};

struct CurveSpec {
  std::string name;
  std::vector<SmoothPiece> pieces;
  std::vector<NodeGluing> gluings;
  ComponentRef base;

  bool operator==(const CurveSpec&) const = default;
};

struct PointedSet {
  std::vector<std::string> labels;
  Index base = 0;

  Index size() const { return static_cast<Index>(labels.size()); }
};

struct EquivariantPi1Data {
  std::string name;
  std::shared_ptr<const Nil2Group> nil2;
  PointedSet pi0_real;
  /// One lift per element of pi0_real, with l * tau(l) = 1.
  std::vector<Nil2Element> kappa_lifts;
  std::vector<CohClass> kappa_classes;
  /// Every piece of the normalization has real points.
  bool hypotheses_met = true;
  std::vector<std::string> warnings;
  /// Number of surface relations imposed on the center.
  Index surface_relations = 0;

  const InvolutiveLattice& abelianization() const { return nil2->abelianization(); }
  const LatticePtr<Integer>& abelianization_ptr() const { return nil2->abelianization_ptr(); }
};

/// Checks a single piece; throws SpecError naming the offending field.
void validate_piece(const SmoothPiece& piece);

/// Nil2 group of a piece on its own generators.
Nil2Group piece_group(const SmoothPiece& piece);

EquivariantPi1Data build(const CurveSpec& spec);

/// Real components after gluing, computed from the gluing graph alone.
PointedSet pi0_real(const CurveSpec& spec);

struct AdjunctionReport {
  bool gated = false;
  std::string gate_reason;
  bool base_zero = false;
  bool distinct_nonzero = false;
  bool basis = false;
  Index h1_dimension = 0;
  /// F_2 coordinates of each kappa class in the H^1 basis.
  std::vector<F2Vector> kappa_coordinates;
  std::vector<std::string> failures;

  bool passed() const { return !gated && base_zero && distinct_nonzero && basis; }
};

AdjunctionReport verify_unit_adjunction(const EquivariantPi1Data& data);

/// Free F_2 vector space on the pointed set, with its unit map.
struct FreeVectorSpace {
  Index dimension = 0;
  /// Basis labels: the non-base points in order.
  std::vector<std::string> basis_labels;
  /// Unit map: one coordinate vector per point (zero for the base).
  std::vector<F2Vector> unit;
};

FreeVectorSpace sym_pi0(const EquivariantPi1Data& data);

/// Matrix (as columns) identifying the free vector space with H^1: basis vector b_i goes
/// to the coordinates of the i-th non-base kappa class.
std::vector<F2Vector> sym_to_h1(const EquivariantPi1Data& data, const FreeVectorSpace& sym);

/// True if unit followed by the identification reproduces the kappa coordinates.
bool unit_matches_kappa(const EquivariantPi1Data& data);

}  // namespace nilsect
