#include "twoiso/directed_tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "twoiso/errors.hpp"

namespace twoiso {

BranchingDegrees::BranchingDegrees(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_) {
    if (v < 0) throw DomainError("branching degrees must be nonnegative");
  }
  while (!values_.empty() && values_.back() == 0) values_.pop_back();
}

BranchingDegrees BranchingDegrees::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> values;
  for (const auto& [k, jk] : pairs) {
    if (k < 1) throw DomainError("branching degree index must be >= 1");
    if (static_cast<std::size_t>(k) > values.size()) values.resize(k, 0);
    values[k - 1] += jk;
  }
  return BranchingDegrees(std::move(values));
}

int BranchingDegrees::operator[](int k) const {
  if (k < 1) throw DomainError("branching degree index must be >= 1");
  return static_cast<std::size_t>(k) <= values_.size() ? values_[k - 1] : 0;
}

long BranchingDegrees::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0L);
}

std::vector<std::pair<int, int>> BranchingDegrees::nonzero() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0) out.emplace_back(static_cast<int>(i) + 1, values_[i]);
  }
  return out;
}

TreeSkeleton TreeSkeleton::from_edges(std::string root, const std::vector<Edge>& edges,
                                      int skeleton_depth) {
  if (skeleton_depth < 0) throw ValidationError("skeleton_depth must be nonnegative");
  auto check_label = [](const std::string& s) {
    if (s.empty()) throw ValidationError("empty vertex label");
    if (s.find('~') != std::string::npos) {
      throw ValidationError("vertex label '" + s + "' contains reserved character '~'");
    }
  };
  check_label(root);

  TreeSkeleton t;
  t.root_ = std::move(root);
  t.skeleton_depth_ = skeleton_depth;
  std::set<std::string> vertices{t.root_};
  for (const auto& [p, c] : edges) {
    check_label(p);
    check_label(c);
    if (c == t.root_) throw ValidationError("root '" + c + "' cannot have a parent");
    if (p == c) throw ValidationError("self-loop at '" + p + "'");
    if (!t.parent_.emplace(c, p).second) {
      throw ValidationError("vertex '" + c + "' has more than one parent");
    }
    t.children_[p].push_back(c);
    vertices.insert(p);
    vertices.insert(c);
  }
  for (auto& [_, kids] : t.children_) std::sort(kids.begin(), kids.end());

  // Unique parents plus reachability from the root rule out cycles.
  std::deque<std::string> queue{t.root_};
  t.depth_of_[t.root_] = 0;
  while (!queue.empty()) {
    const std::string u = queue.front();
    queue.pop_front();
    auto it = t.children_.find(u);
    if (it == t.children_.end()) continue;
    for (const auto& c : it->second) {
      t.depth_of_[c] = t.depth_of_[u] + 1;
      queue.push_back(c);
    }
  }
  if (t.depth_of_.size() != vertices.size()) {
    for (const auto& v : vertices) {
      if (!t.depth_of_.count(v)) {
        throw ValidationError("vertex '" + v + "' is not reachable from the root (or lies on a cycle)");
      }
    }
  }

  for (const auto& [v, d] : t.depth_of_) {
    auto it = t.children_.find(v);
    const std::size_t deg = it == t.children_.end() ? 0 : it->second.size();
    if (deg == 0 && d < skeleton_depth) {
      throw ValidationError("vertex '" + v + "' is a leaf at depth " + std::to_string(d) +
                            " < skeleton_depth " + std::to_string(skeleton_depth) +
                            "; the tree would not be leafless");
    }
    if (deg > 1 && d >= skeleton_depth) {
      throw ValidationError("vertex '" + v + "' branches at depth " + std::to_string(d) +
                            " >= skeleton_depth " + std::to_string(skeleton_depth));
    }
  }
  return t;
}

std::vector<TreeSkeleton::Edge> TreeSkeleton::edges() const {
  std::vector<Edge> out;
  for (const auto& [p, kids] : children_) {
    for (const auto& c : kids) out.emplace_back(p, c);
  }
  return out;
}

int TreeSkeleton::skeleton_height() const {
  int h = 0;
  for (const auto& [_, d] : depth_of_) h = std::max(h, d);
  return h;
}

std::vector<Vertex> TreeSkeleton::children(const Vertex& v) const {
  if (v.is_continuation()) {
    const std::string origin = v.label.substr(0, v.label.find('~'));
    return {Vertex{origin + "~" + std::to_string(v.ray_step + 1), v.label, v.generation + 1,
                   v.ray_step + 1}};
  }
  auto it = children_.find(v.label);
  if (it == children_.end()) {
    return {Vertex{v.label + "~1", v.label, v.generation + 1, 1}};
  }
  std::vector<Vertex> out;
  out.reserve(it->second.size());
  for (const auto& c : it->second) out.push_back(Vertex{c, v.label, v.generation + 1, 0});
  return out;
}

std::vector<std::vector<Vertex>> TreeSkeleton::generations(int count) const {
  std::vector<std::vector<Vertex>> out;
  if (count <= 0) return out;
  out.push_back({Vertex{root_, "", 0, 0}});
  for (int g = 1; g < count; ++g) {
    std::vector<Vertex> next;
    for (const auto& u : out.back()) {
      auto kids = children(u);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    std::sort(next.begin(), next.end(),
              [](const Vertex& a, const Vertex& b) { return a.label < b.label; });
    out.push_back(std::move(next));
  }
  return out;
}

// A subtree that is a single infinite path encodes as "R" whatever its
// skeleton length; anything else is the sorted multiset of child codes.
std::string TreeSkeleton::code_of(const std::string& label) const {
  auto it = children_.find(label);
  if (it == children_.end()) return "R";
  std::vector<std::string> codes;
  for (const auto& c : it->second) codes.push_back(code_of(c));
  if (codes.size() == 1 && codes.front() == "R") return "R";
  std::sort(codes.begin(), codes.end());
  std::string out = "(";
  for (const auto& c : codes) out += c;
  out += ")";
  return out;
}

std::string TreeSkeleton::canonical_code() const { return code_of(root_); }

std::vector<Vertex> generation(const TreeSkeleton& tree, int n) {
  if (n < 0) throw DomainError("generation index must be nonnegative");
  return tree.generations(n + 1).back();
}

BranchingDegrees branching_degrees(const TreeSkeleton& tree, int up_to) {
  if (up_to < 1) throw DomainError("branching_degrees: up_to must be positive");
  const auto gens = tree.generations(up_to);
  std::vector<int> j(up_to, 0);
  for (int k = 1; k <= up_to; ++k) {
    for (const auto& u : gens[k - 1]) {
      j[k - 1] += static_cast<int>(tree.children(u).size()) - 1;
    }
  }
  return BranchingDegrees(std::move(j));
}

BranchingDegrees branching_degrees(const TreeSkeleton& tree) {
  return branching_degrees(tree, std::max(1, tree.skeleton_depth()));
}

TreeSkeleton make_eta_kappa(int eta, int kappa) {
  if (eta < 2) throw DomainError("T_{eta,kappa} needs eta >= 2");
  if (kappa < 0) throw DomainError("T_{eta,kappa} needs finite kappa >= 0");
  std::vector<TreeSkeleton::Edge> edges;
  for (int k = kappa; k >= 1; --k) {
    edges.emplace_back(std::to_string(-k), std::to_string(-k + 1));
  }
  for (int i = 1; i <= eta; ++i) {
    edges.emplace_back("0", "(" + std::to_string(i) + ",1)");
  }
  return TreeSkeleton::from_edges(std::to_string(-kappa), edges, kappa + 1);
}

bool graph_isomorphic(const TreeSkeleton& a, const TreeSkeleton& b) {
  return a.canonical_code() == b.canonical_code();
}

std::pair<TreeSkeleton, TreeSkeleton> example_two_plus_three() {
  auto first = TreeSkeleton::from_edges(
      "r", {{"r", "a"}, {"r", "b"}, {"a", "a1"}, {"a", "a2"}, {"a", "a3"}, {"b", "b1"}}, 2);
  auto second = TreeSkeleton::from_edges(
      "r", {{"r", "a"}, {"r", "b"}, {"a", "a1"}, {"a", "a2"}, {"b", "b1"}, {"b", "b2"}}, 2);
  return {std::move(first), std::move(second)};
}

}  // namespace twoiso
