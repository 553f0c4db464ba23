#include "twoiso/dual_analysis.hpp"

#include <cmath>

#include "twoiso/errors.hpp"
#include "twoiso/model_builder.hpp"
#include "twoiso/xi.hpp"

namespace twoiso {

namespace {

constexpr double kEigenvalueOneTolerance = 1e-9;

struct Detected {
  DualClass cls;
  PropertyReport report;
};

Detected detect(const ShiftSpec& spec, int depth, double tol) {
  const PropertyReport r = property_report(spec, std::max(depth, 4), tol);
  if (!r.is_2isometry) {
    throw PreconditionError("not a 2-isometry (defect " + std::to_string(r.defect_2iso) + ")");
  }
  if (r.kernel_condition) return {DualClass::KernelCondition, r};
  if (r.quasi_brownian) return {DualClass::QuasiBrownian, r};
  throw PreconditionError("2-isometry is neither kernel-condition nor quasi-Brownian");
}

Matrix eigenvalue_one_projector(const Matrix& g) {
  const auto eig = hermitian_eigen(g);
  std::vector<Index> ones;
  for (Index k = 0; k < eig.values.size(); ++k) {
    const double lam = eig.values(k);
    if (std::abs(lam - 1.0) <= kEigenvalueOneTolerance * std::max(1.0, std::abs(lam))) ones.push_back(k);
  }
  return projector(select_columns(eig.vectors, ones));
}

// T'^n restricted to the columns whose orbit stays inside the truncation.
RestrictedMatrix dual_power_columns(const TruncatedOperator& t, int n) {
  const TruncatedOperator dual = cauchy_dual(t);
  RestrictedMatrix out;
  out.coordinates = t.coordinates_up_to(t.depth - 1 - n);
  for (Index c : out.coordinates) out.labels.push_back(t.basis[c].name);
  Matrix y = select_columns(Matrix::Identity(t.dimension(), t.dimension()), out.coordinates);
  for (int k = 0; k < n; ++k) y = dual.matrix * y;
  out.values = std::move(y);
  return out;
}

}  // namespace

std::string to_string(DualClass c) {
  return c == DualClass::KernelCondition ? "kernel-condition" : "quasi-brownian";
}

DualClass detect_class(const ShiftSpec& spec, int depth, double tol) {
  return detect(spec, depth, tol).cls;
}

Matrix asymptotic_closed_form(const ShiftSpec& spec, int depth) {
  const DualClass cls = detect_class(spec, depth);
  const TruncatedOperator t = truncate(spec, depth);
  const Matrix g = t.gram();
  const Matrix p = eigenvalue_one_projector(g);
  if (cls == DualClass::KernelCondition) return p;
  const Index n = t.dimension();
  return 0.5 * p + (Matrix::Identity(n, n) + g).inverse();
}

RestrictedMatrix asymptotic_iterative(const ShiftSpec& spec, int n, int depth) {
  if (n < 1) throw DomainError("iteration count must be positive");
  if (depth < n + 2) throw PreconditionError("asymptotic_iterative needs depth >= n + 2");
  RestrictedMatrix cols = dual_power_columns(truncate(spec, depth), n);
  cols.values = cols.values.adjoint() * cols.values;
  return cols;
}

DualReport classify_c_classes(const ShiftSpec& spec, int depth) {
  const Detected d = detect(spec, depth, 1e-9);
  const TruncatedOperator t = truncate(spec, depth);
  DualReport r;
  r.detected = d.cls;
  r.norm_sq = d.report.norm_sq;
  for (const auto& b : t.basis) r.basis.push_back(b.name);
  // T' is C_{.0} iff T is completely non-unitary, which every representable
  // family is (rooted tree shifts, unilateral shifts, the Brownian model).
  r.c_dot0 = true;
  const Matrix p = eigenvalue_one_projector(t.gram());
  const bool eigenvalue_one = sup_norm(p) > 0.5;
  if (const auto* op = std::get_if<DiagonalOpShift>(&spec)) {
    bool atom_at_one = false;
    for (const auto& a : op->spectral.atoms) atom_at_one |= std::abs(a.lambda - 1.0) <= kIsometricTolerance;
    if (atom_at_one != eigenvalue_one) {
      throw PreconditionError("G_T({1}) and E({1}) disagree on the truncation");
    }
  }
  r.c_0dot = d.cls == DualClass::KernelCondition && !eigenvalue_one;
  r.c_00 = r.c_dot0 && r.c_0dot;
  r.a_closed = asymptotic_closed_form(spec, depth);
  r.iterations = std::max(1, depth - 2);
  r.a_iterative = asymptotic_iterative(spec, r.iterations, depth);
  for (int n = 0; n <= 8; ++n) r.c_n_values.emplace_back(n, cn_closed_form(d.cls, r.norm_sq, n));
  return r;
}

double cn_closed_form(DualClass cls, double norm_sq, int n) {
  if (n < 0) throw DomainError("c_n index must be nonnegative");
  require_at_least_one(norm_sq, "||T||^2");
  if (cls == DualClass::KernelCondition) return 1.0 / (1.0 + n * (norm_sq - 1.0));
  return (1.0 + std::pow(norm_sq, 1.0 - 2.0 * n)) / (1.0 + norm_sq);
}

CnBound cn_bound(const ShiftSpec& spec, int n, int depth) {
  if (n < 0) throw DomainError("c_n index must be nonnegative");
  if (depth < n + 2) throw PreconditionError("cn_bound needs depth >= n + 2");
  const Detected d = detect(spec, depth, 1e-9);
  CnBound out;
  out.c_n = cn_closed_form(d.cls, d.report.norm_sq, n);
  const RestrictedMatrix cols = dual_power_columns(truncate(spec, depth), n);
  const auto eig = hermitian_eigen(cols.values.adjoint() * cols.values);
  out.min_singular_sq = eig.values(0);
  out.minimizer_vector = eig.vectors.col(0);
  Index arg = 0;
  out.minimizer_vector.cwiseAbs().maxCoeff(&arg);
  out.minimizer = cols.labels[arg];
  return out;
}

double cn_limit(const ShiftSpec& spec, int depth) {
  const Detected d = detect(spec, depth, 1e-9);
  const double s = d.report.norm_sq;
  if (std::abs(s - 1.0) <= kIsometricTolerance) {
    throw PreconditionError("cn_limit: isometric input, c_n = 1 for every n");
  }
  return d.cls == DualClass::KernelCondition ? 0.0 : 1.0 / (1.0 + s);
}

}  // namespace twoiso
