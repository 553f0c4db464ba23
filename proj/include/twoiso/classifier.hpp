#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twoiso/linalg.hpp"
#include "twoiso/model_builder.hpp"
#include "twoiso/operator_lab.hpp"

namespace twoiso {

/// Two reals count as equal within kEqualTolerance and as different beyond
/// kGrayZone; in between the verdict is indeterminate.
inline constexpr double kEqualTolerance = 1e-9;
inline constexpr double kGrayZone = 1e-6;

enum class VerdictReason {
  XMismatch,
  JSequenceMismatch,
  JSumMismatch,
  AtomMultisetMismatch,
  MatchCaseI,
  MatchCaseII,
  PermutationFound,
  NoPermutation,
  IndeterminateTolerance,
};

std::string to_string(VerdictReason r);
VerdictReason verdict_reason_from_string(const std::string& s);

struct EquivalenceVerdict {
  bool equivalent = false;
  bool indeterminate = false;
  VerdictReason reason = VerdictReason::NoPermutation;
  /// For matchings: component i of the first side pairs with permutation[i].
  std::optional<std::vector<int>> permutation;

  bool operator==(const EquivalenceVerdict&) const = default;
};

/// Unitary equivalence of 2-isometric tree shifts with (hypo+), from their
/// invariants: x equal and all j_k equal when x > 1, equal sums when x = 1.
EquivalenceVerdict equiv_tree_shifts(const CanonicalInvariant& a, const CanonicalInvariant& b);

/// Orthogonal sums of injective scalar shifts, compared through the moduli of
/// their first `prefix_len` weights. Throws DomainError on a zero weight.
EquivalenceVerdict equiv_shift_sums(const std::vector<std::vector<Complex>>& a,
                                    const std::vector<std::vector<Complex>>& b, int prefix_len);

/// First `len` weights of a scalar shift.
std::vector<Complex> weight_prefix(const ScalarShift& s, int len);

/// Diagonal operator valued shifts: equal atom multisets.
EquivalenceVerdict equiv_diagonal_opshifts(const SpectralData& a, const SpectralData& b);

/// Block-diagonal unitary (+)_n U_0 on the depth-truncation with U T_a = T_b U,
/// U_0 the atom-matching permutation. Throws PreconditionError if a and b are
/// not equivalent.
Matrix construct_intertwiner(const DiagonalOpShift& a, const DiagonalOpShift& b, int depth);

/// dim ker T^* of a verified completely non-unitary 2-isometry.
int multicyclicity_order(const ShiftSpec& spec, double tol = 1e-9);

}  // namespace twoiso
