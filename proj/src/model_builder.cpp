#include "twoiso/model_builder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "twoiso/errors.hpp"
#include "twoiso/xi.hpp"

namespace twoiso {

CanonicalInvariant make_invariant(double x, BranchingDegrees j) {
  x = require_at_least_one(x, "invariant x");
  return {x, std::move(j), std::abs(x - 1.0) <= kIsometricTolerance};
}

TreeShift build_weights_uwrem(const TreeSkeleton& tree, double x, SplitChoice split) {
  x = require_at_least_one(x, "uwrem x");
  TreeShift shift{tree, {}, ContinuationRule{x, 1.0}};
  std::mt19937_64 rng(split.seed);
  std::uniform_real_distribution<double> draw(0.25, 1.0);

  const int height = tree.skeleton_height();
  const auto gens = tree.generations(height + 1);
  for (int n = 0; n < height; ++n) {
    const double beta = xi_eval(n, x);
    for (const auto& u : gens[n]) {
      if (u.is_continuation()) continue;
      std::vector<Vertex> kids;
      for (auto& c : tree.children(u)) {
        if (!c.is_continuation()) kids.push_back(c);
      }
      if (kids.empty()) continue;
      std::vector<double> share(kids.size(), 1.0);
      if (split.strategy == SplitChoice::Strategy::Random) {
        for (auto& s : share) s = draw(rng);
      }
      double norm = 0.0;
      for (double s : share) norm += s * s;
      norm = std::sqrt(norm);
      for (std::size_t k = 0; k < kids.size(); ++k) {
        shift.weights[kids[k].label] = beta * share[k] / norm;
      }
    }
  }
  return shift;
}

CanonicalInvariant decompose(const TreeShift& shift, double tol) {
  const int depth = std::max(6, shift.tree.skeleton_depth() + 4);
  const PropertyReport report = property_report(shift, depth, tol);
  std::string failed;
  if (!report.is_2isometry) failed += " 2-isometry(defect=" + std::to_string(report.defect_2iso) + ")";
  if (!report.hypo_plus) failed += " hypo+(spread=" + std::to_string(report.hypo_plus_spread) + ")";
  if (!failed.empty()) throw PreconditionError("decompose: failed checks:" + failed);

  const Vertex root{shift.tree.root(), "", 0, 0};
  double norm_sq = 0.0;
  for (const auto& c : shift.tree.children(root)) norm_sq += std::norm(shift.weight(c));
  return make_invariant(std::sqrt(norm_sq), branching_degrees(shift.tree));
}

std::pair<TreeSkeleton, TreeShift> synthesize_from_invariant(double x, const BranchingDegrees& j) {
  x = require_at_least_one(x, "invariant x");
  const int depth = j.support_end();
  auto spine = [](int g) { return "a" + std::to_string(g); };
  std::vector<TreeSkeleton::Edge> edges;
  for (int g = 0; g < depth; ++g) edges.emplace_back(spine(g), spine(g + 1));
  for (const auto& [k, jk] : j.nonzero()) {
    for (int i = 1; i <= jk; ++i) {
      std::string prev = "b" + std::to_string(k) + "_" + std::to_string(i);
      edges.emplace_back(spine(k - 1), prev);
      // Pad the side branch down to the skeleton depth so it ends in a ray.
      for (int d = k + 1; d <= depth; ++d) {
        std::string next = "b" + std::to_string(k) + "_" + std::to_string(i) + "." + std::to_string(d);
        edges.emplace_back(prev, next);
        prev = std::move(next);
      }
    }
  }
  TreeSkeleton tree = TreeSkeleton::from_edges(spine(0), edges, depth);
  TreeShift shift = build_weights_uwrem(tree, x);
  return {std::move(tree), std::move(shift)};
}

SpectralData model_atoms(const CanonicalInvariant& inv) {
  SpectralData out;
  out.atoms.push_back({inv.x, 1});
  for (const auto& [k, jk] : inv.j.nonzero()) out.atoms.push_back({xi_eval(k, inv.x), jk});
  return out;
}

std::vector<double> predicted_power_gram(const SpectralData& atoms, int i) {
  std::vector<double> out;
  for (double lambda : atoms.expanded()) out.push_back(1.0 + i * (lambda * lambda - 1.0));
  std::sort(out.begin(), out.end());
  return out;
}

DiagonalOpShift spectral_to_opshift(const SpectralData& spectral) {
  validate(spectral);
  return DiagonalOpShift{spectral};
}

std::vector<ScalarShift> opshift_to_shift_sum(const DiagonalOpShift& shift) {
  validate(shift.spectral);
  std::vector<ScalarShift> out;
  for (double lambda : shift.spectral.expanded()) out.push_back(ScalarShift{XiRule{lambda}});
  return out;
}

}  // namespace twoiso
