#pragma once

// Asymptotics of the Cauchy dual T' = T (T^*T)^{-1} of a 2-isometry T:
// the limit A_{T'} of T'^{*n} T'^n, membership in C_{0.}, C_{.0}, C_{00}, and
// the sharp lower bounds ||T'^n f||^2 >= c_n ||f||^2.
//
// Limits are never approximated by truncation: T'^n e_b stays inside a
// depth-N truncation whenever gen(b) + n <= N - 1, so on those "exact"
// coordinates T'^{*n} T'^n is computed without truncation error.

#include <string>
#include <utility>
#include <vector>

#include "twoiso/linalg.hpp"
#include "twoiso/operator_lab.hpp"

namespace twoiso {

enum class DualClass { KernelCondition, QuasiBrownian };

std::string to_string(DualClass c);

/// A matrix on a subset of the truncation basis.
struct RestrictedMatrix {
  Matrix values;
  std::vector<Index> coordinates;
  std::vector<std::string> labels;
};

struct DualReport {
  DualClass detected = DualClass::KernelCondition;
  bool c_dot0 = false;
  bool c_0dot = false;
  bool c_00 = false;
  std::vector<std::string> basis;
  Matrix a_closed;
  int iterations = 0;
  RestrictedMatrix a_iterative;
  std::vector<std::pair<int, double>> c_n_values;
  double norm_sq = 0.0;
};

/// Kernel-condition 2-isometry or quasi-Brownian isometry, decided from
/// property_report (isometries count as kernel-condition). Throws
/// PreconditionError for anything else.
DualClass detect_class(const ShiftSpec& spec, int depth = 10, double tol = 1e-9);

/// G_T({1}) (kernel condition) or G_T({1})/2 + (I + T^*T)^{-1} (quasi-Brownian)
/// on the depth-truncation basis.
Matrix asymptotic_closed_form(const ShiftSpec& spec, int depth = 10);

/// T'^{*n} T'^n on the exact coordinates; needs depth >= n + 2.
RestrictedMatrix asymptotic_iterative(const ShiftSpec& spec, int n, int depth);

DualReport classify_c_classes(const ShiftSpec& spec, int depth = 10);

/// c_n = 1 / (1 + n(s - 1)) or (1 + s^{1-2n}) / (1 + s), s = ||T||^2.
double cn_closed_form(DualClass cls, double norm_sq, int n);

struct CnBound {
  double c_n = 1.0;
  double min_singular_sq = 1.0;  // smallest eigenvalue of T'^{*n}T'^n on exact coordinates
  std::string minimizer;         // basis label carrying most of the minimizing vector
  Vector minimizer_vector;
};

CnBound cn_bound(const ShiftSpec& spec, int n, int depth);

/// lim c_n: 0 under the kernel condition, 1 / (1 + ||T||^2) for quasi-Brownian
/// isometries. Throws PreconditionError for isometries.
double cn_limit(const ShiftSpec& spec, int depth = 10);

}  // namespace twoiso
