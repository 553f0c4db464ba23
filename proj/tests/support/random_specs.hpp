#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "twoiso/directed_tree.hpp"
#include "twoiso/linalg.hpp"
#include "twoiso/operator_lab.hpp"

namespace twoiso::testing {

/// Random skeleton with depth 1..max_depth, degrees 1..max_degree and
/// generation sizes capped at max_width. Labels are shuffled so that the
/// lexicographic layout differs from the construction order.
inline TreeSkeleton random_skeleton(std::mt19937_64& rng, int max_depth = 5, int max_degree = 4,
                                    int max_width = 12) {
  std::uniform_int_distribution<int> depth_dist(1, max_depth);
  std::uniform_int_distribution<int> deg_dist(1, max_degree);
  std::uniform_int_distribution<int> tag_dist(0, 9999);
  const int depth = depth_dist(rng);
  int counter = 0;
  auto fresh = [&] { return "v" + std::to_string(tag_dist(rng)) + "_" + std::to_string(counter++); };

  std::vector<TreeSkeleton::Edge> edges;
  const std::string root = fresh();
  std::vector<std::string> current{root};
  for (int g = 0; g < depth; ++g) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      // Every later vertex of this generation still needs one child slot.
      const int later = static_cast<int>(current.size() - i - 1);
      const int room = max_width - static_cast<int>(next.size()) - later;
      const int deg = std::max(1, std::min(deg_dist(rng), room));
      for (int k = 0; k < deg; ++k) {
        next.push_back(fresh());
        edges.emplace_back(current[i], next.back());
      }
    }
    current = std::move(next);
  }
  return TreeSkeleton::from_edges(root, edges, depth);
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
inline Matrix random_unitary(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  Matrix z(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) z(r, c) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Random atomic spectral data with up to max_atoms distinct atoms in [1, 3].
inline SpectralData random_spectral(std::mt19937_64& rng, int max_atoms = 6, bool allow_one = true) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_int_distribution<int> mult(1, 3);
  std::uniform_real_distribution<double> lam(1.0, 3.0);
  std::bernoulli_distribution at_one(0.2);
  SpectralData s;
  const int n = count(rng);
  bool used_one = false;
  for (int k = 0; k < n; ++k) {
    const bool one = allow_one && !used_one && at_one(rng);
    used_one = used_one || one;
    s.atoms.push_back({one ? 1.0 : lam(rng), mult(rng)});
  }
  return s;
}

}  // namespace twoiso::testing
