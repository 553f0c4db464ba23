#include "twoiso/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "twoiso/errors.hpp"
#include "twoiso/xi.hpp"

namespace twoiso {

namespace {

constexpr double kKernelThreshold = 1e-10;
constexpr double kCommuteTolerance = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(Complex w, const std::string& where) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DomainError("unbounded weight at " + where);
  }
}

TruncatedOperator truncate_scalar(const ScalarShift& s, int depth) {
  TruncatedOperator t;
  t.matrix = Matrix::Zero(depth, depth);
  t.spill = Matrix::Zero(1, depth);
  for (int k = 0; k < depth; ++k) {
    t.basis.push_back({"e" + std::to_string(k), k, k == 0 ? -1 : k - 1});
    const Complex w = s.weight(k);
    require_finite(w, "e" + std::to_string(k));
    if (k + 1 < depth) {
      t.matrix(k + 1, k) = w;
    } else {
      t.spill(0, k) = w;
    }
  }
  t.spill_labels = {"e" + std::to_string(depth)};
  return t;
}

TruncatedOperator truncate_tree(const TreeShift& s, int depth) {
  const auto gens = s.tree.generations(depth + 1);
  TruncatedOperator t;
  std::unordered_map<std::string, Index> index;
  for (int g = 0; g < depth; ++g) {
    for (const auto& v : gens[g]) {
      index.emplace(v.label, static_cast<Index>(t.basis.size()));
      t.basis.push_back({v.label, g, -1});
    }
  }
  std::unordered_map<std::string, Index> spill_index;
  for (const auto& v : gens[depth]) {
    spill_index.emplace(v.label, static_cast<Index>(t.spill_labels.size()));
    t.spill_labels.push_back(v.label);
  }
  const Index n = static_cast<Index>(t.basis.size());
  t.matrix = Matrix::Zero(n, n);
  t.spill = Matrix::Zero(static_cast<Index>(t.spill_labels.size()), n);
  for (int g = 1; g <= depth; ++g) {
    for (const auto& v : gens[g]) {
      const Complex w = s.weight(v);
      require_finite(w, v.label);
      const Index col = index.at(v.parent);
      if (g < depth) {
        const Index row = index.at(v.label);
        t.matrix(row, col) = w;
        t.basis[row].parent = col;
      } else {
        t.spill(spill_index.at(v.label), col) = w;
      }
    }
  }
  return t;
}

TruncatedOperator truncate_opshift(const DiagonalOpShift& s, int depth) {
  validate(s.spectral);
  const auto lambdas = s.spectral.expanded();
  const Index m = static_cast<Index>(lambdas.size());
  TruncatedOperator t;
  t.matrix = Matrix::Zero(depth * m, depth * m);
  t.spill = Matrix::Zero(m, depth * m);
  for (int level = 0; level < depth; ++level) {
    for (Index j = 0; j < m; ++j) {
      t.basis.push_back({std::to_string(level) + ":" + std::to_string(j), level,
                         level == 0 ? -1 : (level - 1) * m + j});
      const double w = xi_eval(level, lambdas[j]);
      if (level + 1 < depth) {
        t.matrix((level + 1) * m + j, level * m + j) = w;
      } else {
        t.spill(j, level * m + j) = w;
      }
    }
  }
  for (Index j = 0; j < m; ++j) t.spill_labels.push_back(std::to_string(depth) + ":" + std::to_string(j));
  return t;
}

TruncatedOperator truncate_brownian(const BrownianShift& s, int depth) {
  if (!(s.sigma > 0.0) || !std::isfinite(s.sigma)) {
    throw DomainError("Brownian shift needs finite sigma > 0");
  }
  TruncatedOperator t;
  const Index scalar = depth;
  t.matrix = Matrix::Zero(depth + 1, depth + 1);
  t.spill = Matrix::Zero(1, depth + 1);
  for (int k = 0; k < depth; ++k) {
    t.basis.push_back({"e" + std::to_string(k), k, -1});
    if (k + 1 < depth) {
      t.matrix(k + 1, k) = 1.0;
    } else {
      t.spill(0, k) = 1.0;
    }
  }
  t.basis.push_back({"c", 0, -1});
  t.matrix(0, scalar) = s.sigma;
  t.matrix(scalar, scalar) = 1.0;
  t.spill_labels = {"e" + std::to_string(depth)};
  t.tree_structured = false;
  return t;
}

Matrix inverse_hermitian(const Matrix& g, double min_eigenvalue) {
  const auto eig = hermitian_eigen(g);
  if (eig.values.size() > 0 && eig.values(0) <= min_eigenvalue) {
    throw PreconditionError("T*T is near-singular on the truncation (smallest eigenvalue " +
                            std::to_string(eig.values(0)) + ")");
  }
  const RealVector inv = eig.values.cwiseInverse();
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

Complex ScalarShift::weight(int n) const {
  return std::visit(Overloaded{[n](const XiRule& r) { return Complex(xi_eval(n, r.x)); },
                               [n](const std::vector<Complex>& list) {
                                 if (list.empty()) throw ValidationError("empty weight list");
                                 return list[std::min<std::size_t>(n, list.size() - 1)];
                               }},
                    weights);
}

Complex ContinuationRule::weight(int generation) const {
  if (xi_x) return xi_eval(generation - 1, *xi_x);
  return constant;
}

Complex TreeShift::weight(const Vertex& v) const {
  if (v.is_continuation()) return continuation.weight(v.generation);
  auto it = weights.find(v.label);
  if (it == weights.end()) throw ValidationError("no weight for vertex '" + v.label + "'");
  return it->second;
}

int SpectralData::dimension() const {
  int d = 0;
  for (const auto& a : atoms) d += a.multiplicity;
  return d;
}

std::vector<double> SpectralData::expanded() const {
  std::vector<double> out;
  for (const auto& a : atoms) out.insert(out.end(), a.multiplicity, a.lambda);
  return out;
}

void validate(const SpectralData& spectral) {
  if (spectral.atoms.empty()) throw DomainError("spectral data has no atoms");
  for (const auto& a : spectral.atoms) {
    require_at_least_one(a.lambda, "spectral atom");
    if (a.multiplicity <= 0) throw DomainError("atom multiplicity must be positive");
  }
}

void validate(const ShiftSpec& spec) {
  std::visit(
      Overloaded{[](const ScalarShift& s) {
                   if (auto* r = std::get_if<XiRule>(&s.weights)) {
                     require_at_least_one(r->x, "scalar shift x");
                   } else {
                     const auto& list = std::get<std::vector<Complex>>(s.weights);
                     if (list.empty()) throw ValidationError("empty weight list");
                     for (auto w : list) require_finite(w, "scalar weight list");
                   }
                 },
                 [](const TreeShift& s) {
                   for (const auto& [parent, child] : s.tree.edges()) {
                     (void)parent;
                     if (!s.weights.count(child)) {
                       throw ValidationError("no weight for vertex '" + child + "'");
                     }
                   }
                   for (const auto& [label, w] : s.weights) {
                     if (!s.tree.contains(label) || label == s.tree.root()) {
                       throw ValidationError("weight given for unknown or root vertex '" + label + "'");
                     }
                     require_finite(w, label);
                   }
                   if (s.continuation.xi_x) require_at_least_one(*s.continuation.xi_x, "continuation x");
                 },
                 [](const DiagonalOpShift& s) { validate(s.spectral); },
                 [](const BrownianShift& s) {
                   if (!(s.sigma > 0.0) || !std::isfinite(s.sigma)) {
                     throw DomainError("Brownian shift needs finite sigma > 0");
                   }
                 }},
      spec);
}

int kernel_depth(const ShiftSpec& spec) {
  if (const auto* t = std::get_if<TreeShift>(&spec)) return t->tree.skeleton_depth();
  return 0;
}

Matrix TruncatedOperator::extended() const {
  Matrix e(matrix.rows() + spill.rows(), matrix.cols());
  e << matrix, spill;
  return e;
}

Matrix TruncatedOperator::gram() const {
  return matrix.adjoint() * matrix + spill.adjoint() * spill;
}

std::vector<Index> TruncatedOperator::coordinates_up_to(int g) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].generation <= g) out.push_back(static_cast<Index>(i));
  }
  return out;
}

TruncatedOperator truncate(const ShiftSpec& spec, int depth) {
  if (depth < 2) throw DomainError("truncation depth must be >= 2");
  validate(spec);
  TruncatedOperator t =
      std::visit(Overloaded{[depth](const ScalarShift& s) { return truncate_scalar(s, depth); },
                            [depth](const TreeShift& s) { return truncate_tree(s, depth); },
                            [depth](const DiagonalOpShift& s) { return truncate_opshift(s, depth); },
                            [depth](const BrownianShift& s) { return truncate_brownian(s, depth); }},
                 spec);
  t.depth = depth;
  t.interior_depth = depth - 1;
  return t;
}

TruncatedOperator cauchy_dual(const TruncatedOperator& t) {
  const Matrix g_inv = inverse_hermitian(t.gram(), 1e-10);
  TruncatedOperator dual = t;
  dual.matrix = t.matrix * g_inv;
  dual.spill = t.spill * g_inv;
  return dual;
}

Matrix forest_kernel_basis(const TruncatedOperator& t) {
  if (!t.tree_structured) throw PreconditionError("closed-form kernel needs a tree-structured truncation");
  const Index n = t.dimension();
  std::vector<Vector> columns;
  for (Index i = 0; i < n; ++i) {
    if (t.basis[i].generation == 0) {
      Vector e = Vector::Zero(n);
      e(i) = 1.0;
      columns.push_back(e);
    }
  }
  // Children of each parent whose children all lie inside the truncation.
  std::map<Index, std::vector<Index>> kids;
  for (Index i = 0; i < n; ++i) {
    if (t.basis[i].parent >= 0) kids[t.basis[i].parent].push_back(i);
  }
  for (const auto& [parent, children] : kids) {
    if (t.basis[parent].generation > t.depth - 2) continue;
    const Index d = static_cast<Index>(children.size());
    Vector lam(d);
    for (Index k = 0; k < d; ++k) lam(k) = t.matrix(children[k], parent);
    Matrix complement;
    if (lam.norm() == 0.0) {
      complement = Matrix::Identity(d, d);
    } else {
      Eigen::HouseholderQR<Matrix> qr(lam);
      const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
      complement = q.rightCols(d - 1);
    }
    for (Index c = 0; c < complement.cols(); ++c) {
      Vector e = Vector::Zero(n);
      for (Index k = 0; k < d; ++k) e(children[k]) = complement(k, c);
      columns.push_back(e);
    }
  }
  Matrix q(n, static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) q.col(static_cast<Index>(c)) = columns[c];
  return q;
}

Matrix kernel_basis(const ShiftSpec& spec, const TruncatedOperator& t) {
  (void)spec;
  if (t.tree_structured) return forest_kernel_basis(t);
  return adjoint_kernel_basis(t.matrix, kKernelThreshold);
}

PropertyReport property_report(const ShiftSpec& spec, int depth, double tol) {
  if (depth < 4) throw DomainError("property_report needs depth >= 4 to have an interior");
  const TruncatedOperator t = truncate(spec, depth);
  PropertyReport r;
  r.depth = depth;
  r.interior_generation = depth - 2;
  r.tolerance = tol;

  const auto interior = t.coordinates_up_to(r.interior_generation);
  const Index n = t.dimension();
  const Matrix g = t.gram();
  const Matrix t2 = t.extended() * t.matrix;  // exact on columns of generation <= depth-2
  const Matrix defect = Matrix::Identity(n, n) - 2.0 * g + t2.adjoint() * t2;
  const Matrix defect_interior = select_block(defect, interior, interior);
  r.defect_2iso = sup_norm(defect_interior);
  r.is_2isometry = r.defect_2iso <= tol;
  const double top = hermitian_eigen(defect_interior).values.maxCoeff();
  r.hyperexpansive_margin = -top;
  r.is_2hyperexpansive = top <= tol;

  // Kernel of T^*: SVD route always, closed form cross-check for trees.
  const Matrix k_svd = adjoint_kernel_basis(t.matrix, kKernelThreshold);
  r.kernel_dim_svd = static_cast<int>(k_svd.cols());
  Matrix k_used = k_svd;
  if (t.tree_structured) {
    const Matrix k_closed = forest_kernel_basis(t);
    r.kernel_dim_closed_form = static_cast<int>(k_closed.cols());
    r.kernel_projector_mismatch = operator_norm(projector(k_closed) - projector(k_svd));
    k_used = k_closed;
  }
  const Matrix p = projector(k_used);
  r.kernel_residual = operator_norm((Matrix::Identity(n, n) - p) * g * p);
  r.kernel_condition = r.kernel_residual <= tol;

  // (hypo+): ||T e_u|| depends only on the parent of u.
  if (t.tree_structured) {
    std::map<Index, std::pair<double, double>> range;  // parent -> (min, max)
    for (Index u : interior) {
      const Index parent = t.basis[u].parent;
      if (parent < 0) continue;
      const double norm = std::sqrt(std::max(0.0, g(u, u).real()));
      auto [it, inserted] = range.emplace(parent, std::make_pair(norm, norm));
      if (!inserted) {
        it->second.first = std::min(it->second.first, norm);
        it->second.second = std::max(it->second.second, norm);
      }
    }
    double spread = 0.0;
    for (const auto& [parent, mm] : range) {
      spread = std::max(spread, mm.second - mm.first);
      r.hypo_plus_alpha[t.basis[parent].name] = 0.5 * (mm.first + mm.second);
    }
    r.hypo_plus_spread = spread;
    r.hypo_plus = spread <= tol;
  } else {
    r.hypo_plus = false;
    r.hypo_plus_spread = 0.0;
  }

  // Delta T = Delta^{1/2} T Delta^{1/2}, Delta = T^*T - I, on interior columns.
  const Matrix delta = g - Matrix::Identity(n, n);
  const Matrix root = psd_sqrt(delta);
  const Matrix lhs = delta * t.matrix;
  const Matrix rhs = root * t.matrix * root;
  r.quasi_brownian_residual = operator_norm(select_columns(lhs - rhs, interior));
  r.quasi_brownian = r.is_2isometry && r.quasi_brownian_residual <= tol;

  r.norm_sq = hermitian_eigen(g).values.maxCoeff();
  return r;
}

double moduli_product_residual(std::span<const Matrix> family) {
  if (family.empty()) throw PreconditionError("moduli_product_residual needs at least one matrix");
  const Index n = family.front().rows();
  for (const auto& a : family) {
    if (a.rows() != n || a.cols() != n) throw PreconditionError("matrices must be square of equal size");
  }
  std::vector<Matrix> moduli;
  for (const auto& a : family) moduli.push_back(modulus(a));
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c = operator_norm(moduli[i] * family[j] - family[j] * moduli[i]);
      if (c > kCommuteTolerance) {
        throw PreconditionError("|A_" + std::to_string(i + 1) + "| does not commute with A_" +
                                std::to_string(j + 1) + " (" + std::to_string(c) + ")");
      }
    }
  }
  Matrix product = Matrix::Identity(n, n);
  Matrix modulus_product = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    product = product * family[i];
    modulus_product = modulus_product * moduli[i];
  }
  return operator_norm(modulus(product) - modulus_product);
}

IntertwineResult intertwine_residual(const Matrix& a, const TruncatedOperator& t1,
                                     const TruncatedOperator& t2) {
  if (a.rows() != t2.dimension() || a.cols() != t1.dimension()) {
    throw PreconditionError("intertwiner dimensions do not match the operators");
  }
  const auto cols = t1.coordinates_up_to(t1.interior_depth - 1);
  IntertwineResult r;
  r.residual = operator_norm(select_columns(a * t1.matrix - t2.matrix * a, cols));
  double upper = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (t2.basis[i].generation < t1.basis[j].generation) upper = std::max(upper, std::abs(a(i, j)));
    }
  }
  r.lower_triangular = upper <= 1e-10;
  return r;
}

std::vector<double> power_gram_spectrum(const ShiftSpec& spec, int i, int depth) {
  if (i < 1) throw DomainError("power index must be positive");
  if (depth < i + kernel_depth(spec) + 2) {
    throw PreconditionError("depth " + std::to_string(depth) + " too small for power " +
                            std::to_string(i) + " (needs >= i + kernel depth + 2)");
  }
  const TruncatedOperator t = truncate(spec, depth);
  Matrix y = kernel_basis(spec, t);
  for (int k = 0; k < i; ++k) y = t.matrix * y;
  const RealVector ev = hermitian_eigen(y.adjoint() * y).values;
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace twoiso
