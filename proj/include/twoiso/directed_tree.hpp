#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace twoiso {

/// A vertex of the ray-continued tree. Skeleton vertices have ray_step == 0;
/// the k-th vertex of the infinite path hanging below skeleton leaf `a` is
/// labelled "a~k" and has ray_step == k.
struct Vertex {
  std::string label;
  std::string parent;  // empty for the root
  int generation = 0;
  int ray_step = 0;

  bool is_continuation() const { return ray_step > 0; }
};

/// Finitely supported sequence j_1, j_2, ... of nonnegative integers.
class BranchingDegrees {
 public:
  BranchingDegrees() = default;
  /// values[0] is j_1.
  explicit BranchingDegrees(std::vector<int> values);
  /// Pairs (k, j_k) with k >= 1; unlisted indices are zero.
  static BranchingDegrees from_pairs(const std::vector<std::pair<int, int>>& pairs);

  /// j_k; zero for k beyond the support. k must be >= 1.
  int operator[](int k) const;
  /// Largest k with j_k != 0, or 0 when the sequence vanishes.
  int support_end() const { return static_cast<int>(values_.size()); }
  long total() const;
  std::vector<std::pair<int, int>> nonzero() const;

  bool operator==(const BranchingDegrees&) const = default;

 private:
  std::vector<int> values_;  // trailing zeros trimmed
};

/// A rooted leafless directed tree given by a finite skeleton. Every skeleton
/// leaf continues as an infinite path of degree-one vertices. Skeleton leaves
/// must sit at depth >= skeleton_depth and branching (degree >= 2) may only
/// happen strictly above it, so j_k = 0 for k > skeleton_depth.
///
/// Immutable once constructed.
class TreeSkeleton {
 public:
  using Edge = std::pair<std::string, std::string>;

  /// Throws ValidationError on cycles, multiple parents, unreachable vertices,
  /// leaves above skeleton_depth or branching at/below it.
  static TreeSkeleton from_edges(std::string root, const std::vector<Edge>& edges,
                                 int skeleton_depth);

  const std::string& root() const { return root_; }
  int skeleton_depth() const { return skeleton_depth_; }
  std::size_t skeleton_size() const { return depth_of_.size(); }
  /// Edges of the skeleton in lexicographic order.
  std::vector<Edge> edges() const;
  /// Depth of the deepest skeleton vertex.
  int skeleton_height() const;

  bool contains(const std::string& label) const { return depth_of_.count(label) != 0; }
  /// Children of a vertex of the continued tree, lexicographically ordered.
  std::vector<Vertex> children(const Vertex& v) const;
  /// Generations 0 .. count-1 of the continued tree, each sorted by label.
  std::vector<std::vector<Vertex>> generations(int count) const;

  /// Canonical string of the rooted isomorphism class of the continued tree.
  std::string canonical_code() const;

 private:
  std::string code_of(const std::string& label) const;

  std::string root_;
  int skeleton_depth_ = 0;
  std::map<std::string, std::vector<std::string>> children_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, int> depth_of_;
};

/// Chi^n(root) of the continued tree, sorted by label.
std::vector<Vertex> generation(const TreeSkeleton& tree, int n);

/// j_k = sum over u in Chi^{k-1}(root) of (deg u - 1), for 1 <= k <= up_to.
BranchingDegrees branching_degrees(const TreeSkeleton& tree, int up_to);
/// Same, over the whole skeleton (beyond it every j_k is zero).
BranchingDegrees branching_degrees(const TreeSkeleton& tree);

/// The tree T_{eta,kappa}: a chain -kappa -> ... -> -1 -> 0, vertex 0 has eta
/// children (i,1) each starting an infinite ray. Root is "-kappa" (or "0").
TreeSkeleton make_eta_kappa(int eta, int kappa);

/// Root-preserving isomorphism of the continued trees.
bool graph_isomorphic(const TreeSkeleton& a, const TreeSkeleton& b);

/// Two non-isomorphic trees with j = (1, 2, 0, ...): the root has two
/// children; in the first tree one of them has three children, in the second
/// both have two.
std::pair<TreeSkeleton, TreeSkeleton> example_two_plus_three();

}  // namespace twoiso
