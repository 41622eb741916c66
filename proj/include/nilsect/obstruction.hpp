#pragma once

// The 2-nilpotent section obstruction
//   delta_2 : H^1(G, pi / [pi]_2) -> H^2(G, [pi]_2 / [pi]_3)
// by the lifting route (boundary of the central extension) and by the
// quadratic expansion in the kappa basis.

#include "nilsect/curve.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilsect {

/// The kappa classes do not form a basis of H^1, so the expansion route is unavailable.
class BasisUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cohomology of one curve, computed once and shared by all delta_2 evaluations.
class Delta2Calculator {
 public:
  explicit Delta2Calculator(const EquivariantPi1Data& data);

  const EquivariantPi1Data& data() const { return data_; }
  const Nil2Group& group() const { return *data_.nil2; }
  const FinAbGroup& h1_group() const { return h1_; }
  const FinAbGroup& h2_center() const { return h2_; }

  /// Class of gamma~ tau(gamma~) for gamma~ = s(rep) z; throws if rep is not a 1-cocycle.
  CohClass lift(const IntVector& rep, const IntVector& central_shift) const;
  CohClass lift(const IntVector& rep) const;
  CohClass lift(const CohClass& x) const;

  /// Sum over pairs of basis classes of the pushed-forward cup products.
  CohClass zarkhin(const CohClass& x) const;
  bool basis_available() const { return basis_.has_value(); }

  /// [-,-]_*(x cup y) in the center, computed from the cached tensor data.
  CohClass cup_pushforward(const IntVector& x, const IntVector& y) const;
  CohClass cup_pushforward(const CohClass& x, const CohClass& y) const;

  /// (I + tau_c) z = -c has an integer solution.
  bool solvable(const CohClass& obstruction) const;

  F2Vector h2_coordinates(const CohClass& c) const { return h2_.f2_coordinates(c.rep()); }
  F2Vector h1_coordinates(const CohClass& c) const { return h1_.f2_coordinates(c.rep()); }
  CohClass h1_class(const F2Vector& coords) const;

  /// Commutator pairing composed with the wedge quotient, tensor square -> center.
  const IntMatrix& pairing_on_tensors() const { return pairing_tensor_; }

 private:
  const EquivariantPi1Data& data_;
  FinAbGroup h1_, h2_;
  IntMatrix pairing_tensor_;
  LatticePtr<Integer> tensor_;
  std::optional<EquivariantMap> pushforward_map_;
  SmithDecomposition<Integer> norm_smith_;
  // H^1 coordinates of the kappa classes with the base dropped, if they form a basis.
  std::optional<std::vector<F2Vector>> basis_;
  std::vector<std::size_t> basis_component_;
};

CohClass delta2_lift(const EquivariantPi1Data& data, const CohClass& x);
CohClass delta2_zarkhin(const EquivariantPi1Data& data, const CohClass& x);

/// H^1 classes (canonical representatives, in enumeration order) with vanishing delta_2.
std::vector<CohClass> kernel_delta2(const EquivariantPi1Data& data);

struct ObstructionRow {
  F2Vector h1;                    // coordinates in H^1
  IntVector representative;       // canonical representative
  F2Vector delta2_lift;           // coordinates in H^2 of the center
  std::optional<F2Vector> delta2_zarkhin;
  bool in_kernel = false;
  bool realized = false;          // equals the class of some real component
  std::vector<std::string> components;
};

enum class Verdict { pass, fail, hypothesis_not_met };

struct ObstructionReport {
  std::vector<ObstructionRow> rows;
  Index h1_dimension = 0;
  Index h2_dimension = 0;
  Index kernel_size = 0;
  Index image_size = 0;
  bool routes_agree = true;
  bool zarkhin_available = false;
  Verdict verdict = Verdict::fail;
};

ObstructionReport verify_main_theorem(const EquivariantPi1Data& data);

struct PushforwardInjectivity {
  bool injective = true;
  Index source_dimension = 0;
  Index elements_checked = 0;
  F2Vector witness;
};

/// [-,-]_* : H^2(G, Lambda^2 pi^ab) -> H^2(G, center), decided by enumerating the source.
PushforwardInjectivity check_pushforward_injective(const EquivariantPi1Data& data);
bool pushforward_injective(const EquivariantPi1Data& data);

struct ZarkhinIdentityCheck {
  bool holds = true;
  Index pairs_checked = 0;
  std::optional<std::pair<F2Vector, F2Vector>> counterexample;
};

/// delta(x + y) - delta(x) - delta(y) = [-,-]_*(x cup y) for all pairs, lift route only.
ZarkhinIdentityCheck check_zarkhin_identity(const Delta2Calculator& calc);

struct IndependenceCheck {
  bool holds = true;
  Index samples = 0;
};

/// Shifts representatives by coboundaries and lifts by central elements; the class must not move.
IndependenceCheck check_representative_independence(const Delta2Calculator& calc, std::uint64_t seed,
                                                     Index shifts_per_class = 10);

/// Kernel membership via the norm equation agrees with the H^2 coordinates for every class.
bool check_solvability_oracle(const Delta2Calculator& calc);

std::string to_string(Verdict v);

}  // namespace nilsect
