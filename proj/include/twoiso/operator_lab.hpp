#pragma once

// Finite truncations of weighted-shift-type operators and the numerical
// checks run on them.
//
// Every operator handled here maps "generation" g into generation g + 1 (tree
// generations, levels of l^2_M, or the l^2 levels of the Brownian model plus
// one generation-0 scalar coordinate). A depth-N truncation keeps generations
// 0 .. N-1. Its square `matrix` is the compression P_N T P_N, and `spill` holds
// the rows of generation N, so that [matrix; spill] gives T e_u exactly for
// every kept basis vector. Since T^*T preserves generations, `gram()` is then
// the exact compression of T^*T.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "twoiso/directed_tree.hpp"
#include "twoiso/linalg.hpp"

namespace twoiso {

/// Weights xi_n(x), n = 0, 1, ...
struct XiRule {
  double x = 1.0;
};

/// Unilateral weighted shift on l^2. A finite weight list is continued with
/// its last entry.
struct ScalarShift {
  std::variant<XiRule, std::vector<Complex>> weights;

  Complex weight(int n) const;
};

/// Weight of ray-continuation vertices: xi_{g-1}(x) at generation g when
/// `xi_x` is set, `constant` otherwise.
struct ContinuationRule {
  std::optional<double> xi_x;
  Complex constant{1.0, 0.0};

  Complex weight(int generation) const;
};

struct TreeShift {
  TreeSkeleton tree;
  std::map<std::string, Complex> weights;  // every non-root skeleton vertex
  ContinuationRule continuation;

  Complex weight(const Vertex& v) const;
};

struct Atom {
  double lambda = 1.0;
  int multiplicity = 1;
};

/// Atomic spectral measure of W_0 on a finite-dimensional M.
struct SpectralData {
  std::vector<Atom> atoms;

  int dimension() const;
  /// One lambda per coordinate of M, in atom order.
  std::vector<double> expanded() const;
};

/// Throws DomainError unless every lambda >= 1 and every multiplicity > 0.
void validate(const SpectralData& spectral);

/// Operator valued unilateral shift on l^2_M with W_n = diag(xi_n(lambda_j)).
struct DiagonalOpShift {
  SpectralData spectral;
};

/// B(h + c) = (S h + sigma c e_0) + c on l^2 (+) C, S the unweighted shift.
struct BrownianShift {
  double sigma = 1.0;
};

using ShiftSpec = std::variant<ScalarShift, TreeShift, DiagonalOpShift, BrownianShift>;

/// Throws ValidationError / DomainError for malformed specs.
void validate(const ShiftSpec& spec);

/// Deepest generation carrying part of ker T^* (the tree's skeleton depth,
/// zero for the other families).
int kernel_depth(const ShiftSpec& spec);

struct BasisLabel {
  std::string name;
  int generation = 0;
  Index parent = -1;  // index of the parent basis vector for tree-structured specs
};

struct TruncatedOperator {
  Matrix matrix;
  Matrix spill;
  std::vector<BasisLabel> basis;
  std::vector<std::string> spill_labels;
  int depth = 0;
  /// Basis vectors of generation < interior_depth have their image inside `matrix`.
  int interior_depth = 0;
  /// True when every basis vector has at most one parent (weighted shift on a forest).
  bool tree_structured = true;

  Index dimension() const { return matrix.rows(); }
  Matrix extended() const;
  Matrix gram() const;
  /// Indices of basis vectors with generation <= g.
  std::vector<Index> coordinates_up_to(int g) const;
};

/// depth >= 2. Throws DomainError otherwise or for unbounded weights.
TruncatedOperator truncate(const ShiftSpec& spec, int depth);

/// T (T^*T)^{-1}. Throws PreconditionError if the smallest eigenvalue of
/// T^*T is <= 1e-10.
TruncatedOperator cauchy_dual(const TruncatedOperator& t);

struct PropertyReport {
  int depth = 0;
  int interior_generation = 0;  // identities are checked on generations <= this
  double tolerance = 1e-9;

  double defect_2iso = 0.0;
  bool is_2isometry = false;
  bool is_2hyperexpansive = false;
  double hyperexpansive_margin = 0.0;  // -lambda_max of the defect; >= -tol when true

  bool kernel_condition = false;
  double kernel_residual = 0.0;
  int kernel_dim_svd = 0;
  std::optional<int> kernel_dim_closed_form;
  std::optional<double> kernel_projector_mismatch;

  bool hypo_plus = false;
  double hypo_plus_spread = 0.0;
  std::map<std::string, double> hypo_plus_alpha;

  bool quasi_brownian = false;
  double quasi_brownian_residual = 0.0;

  double norm_sq = 0.0;

  bool operator==(const PropertyReport&) const = default;
};

/// Verification battery on the interior of a depth-`depth` truncation
/// (depth >= 4).
PropertyReport property_report(const ShiftSpec& spec, int depth, double tol = 1e-9);

/// Orthonormal basis of ker T^* for a tree-structured truncation: the
/// generation-0 vectors plus, for every parent u of generation <= depth-2, an
/// orthonormal basis of l^2(Chi(u)) minus <lambda^u>.
Matrix forest_kernel_basis(const TruncatedOperator& t);

/// Orthonormal basis of ker T^* on the truncation: closed form when the
/// truncation is tree-structured, SVD otherwise.
Matrix kernel_basis(const ShiftSpec& spec, const TruncatedOperator& t);

/// || |A_1 ... A_n| - |A_1| ... |A_n| ||. Requires |A_i| A_j = A_j |A_i| for
/// i < j within 1e-10; throws PreconditionError otherwise.
double moduli_product_residual(std::span<const Matrix> family);

struct IntertwineResult {
  double residual = 0.0;        // ||A T1 - T2 A|| on interior columns of T1
  bool lower_triangular = false;  // A_{ab} ~ 0 whenever gen(a) < gen(b)
};

IntertwineResult intertwine_residual(const Matrix& a, const TruncatedOperator& t1,
                                     const TruncatedOperator& t2);

/// Ascending eigenvalues of (T^i Q)^*(T^i Q), Q an orthonormal basis of
/// ker T^*. Needs depth >= i + kernel_depth(spec) + 2.
std::vector<double> power_gram_spectrum(const ShiftSpec& spec, int i, int depth);

}  // namespace twoiso
