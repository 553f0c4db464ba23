#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twoiso/directed_tree.hpp"
#include "twoiso/operator_lab.hpp"

namespace twoiso {

/// Threshold separating the isometric case x = 1 from x > 1.
inline constexpr double kIsometricTolerance = 1e-9;

/// How the generation weight xi_n(x)^2 is split among the children of a
/// generation-n vertex. Any positive split yields the same unitary class.
struct SplitChoice {
  enum class Strategy { Equal, Random };
  Strategy strategy = Strategy::Equal;
  std::uint64_t seed = 0;

  static SplitChoice equal() { return {}; }
  static SplitChoice random(std::uint64_t seed) { return {Strategy::Random, seed}; }
};

/// (x, j): x = ||S e_root||, j the generation branching degrees. Complete
/// unitary invariant of 2-isometric tree shifts satisfying (hypo+); in the
/// isometric case only sum_k j_k matters.
struct CanonicalInvariant {
  double x = 1.0;
  BranchingDegrees j;
  bool is_isometric = true;

  bool operator==(const CanonicalInvariant&) const = default;
};

CanonicalInvariant make_invariant(double x, BranchingDegrees j);

/// Weights on `tree` with sum_{w in Chi(u)} |lambda_w|^2 = xi_n(x)^2 for every
/// u of generation n. Ray continuations carry xi_n(x).
TreeShift build_weights_uwrem(const TreeSkeleton& tree, double x, SplitChoice split = {});

/// Verifies the 2-isometry and (hypo+) on a truncation, then reads off the
/// invariant. Throws PreconditionError naming the failed checks.
CanonicalInvariant decompose(const TreeShift& shift, double tol = 1e-9);

/// A spine a0 -> a1 -> ... with one vertex of degree 1 + j_k in generation
/// k - 1 for each k in the support, the extra children starting rays, and
/// equal-split weights for x.
std::pair<TreeSkeleton, TreeShift> synthesize_from_invariant(double x, const BranchingDegrees& j);

/// Atoms of the model W_0 = x (+) sum_k xi_k(x) I_{j_k}.
SpectralData model_atoms(const CanonicalInvariant& inv);

/// Sorted multiset {1 + i (lambda^2 - 1)} over the coordinates of `atoms`:
/// the squared singular values of T^i on ker T^* for the model.
std::vector<double> predicted_power_gram(const SpectralData& atoms, int i);

DiagonalOpShift spectral_to_opshift(const SpectralData& spectral);

/// One S_[lambda] per coordinate of M; the count equals dim ker W^*.
std::vector<ScalarShift> opshift_to_shift_sum(const DiagonalOpShift& shift);

}  // namespace twoiso
