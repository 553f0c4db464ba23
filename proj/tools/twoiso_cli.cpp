// Command-line front end: tree inspection, weight construction, verification,
// invariants, equivalence and Cauchy dual analysis.
//
// Exit codes: 0 success / equivalent, 1 a checked property fails / not
// equivalent, 2 invalid input, 3 indeterminate verdict.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "twoiso/classifier.hpp"
#include "twoiso/directed_tree.hpp"
#include "twoiso/dual_analysis.hpp"
#include "twoiso/errors.hpp"
#include "twoiso/json_io.hpp"
#include "twoiso/model_builder.hpp"
#include "twoiso/operator_lab.hpp"
#include "twoiso/xi.hpp"

namespace {

using namespace twoiso;

enum Exit { kOk = 0, kFail = 1, kInvalid = 2, kIndeterminate = 3 };

struct Common {
  int depth = 10;
  double tol = 1e-9;
  std::optional<double> x;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void emit(const Json& j, const Common& c) {
  std::cout << j.dump(2) << '\n';
  if (!c.out.empty()) save_json(c.out, j);
}

SplitChoice split_of(const Common& c) {
  return c.seed ? SplitChoice::random(*c.seed) : SplitChoice::equal();
}

Json rule_json(double x, const Common& c) { return uwrem_rule_to_json({x, split_of(c)}); }

// A tree shift from a tree file plus either --weights or --x (uwrem).
struct ShiftSource {
  TreeShift shift;
  Json provenance;
};

ShiftSource load_shift(const std::string& tree_path, const std::string& weights_path,
                       std::optional<double> x, const Common& c) {
  const TreeSkeleton tree = tree_from_json(load_json(tree_path));
  if (!weights_path.empty()) {
    const Json w = load_json(weights_path);
    return {tree_shift_from_json(tree, w), w.contains("rule") ? w : Json{{"weights", weights_path}}};
  }
  if (!x) throw ValidationError("either --x or --weights is required");
  return {build_weights_uwrem(tree, *x, split_of(c)), rule_json(*x, c)};
}

void require_depth(int depth, int minimum) {
  if (depth < minimum) throw DomainError("--depth must be at least " + std::to_string(minimum));
}

int run_tree_info(const std::string& path, const Common& c) {
  const TreeSkeleton tree = tree_from_json(load_json(path));
  const int count = std::max(c.depth, tree.skeleton_depth() + 2);
  Json sizes = Json::array();
  for (const auto& g : tree.generations(count)) sizes.push_back(g.size());
  Json j{{"root", tree.root()},
         {"skeleton_depth", tree.skeleton_depth()},
         {"skeleton_size", tree.skeleton_size()},
         {"skeleton_height", tree.skeleton_height()},
         {"generation_sizes", sizes},
         {"branching_degrees", to_json(make_invariant(1.0, branching_degrees(tree)))["j"]},
         {"canonical_code", tree.canonical_code()}};
  emit(j, c);
  return kOk;
}

int run_build(const std::string& path, const Common& c) {
  if (!c.x) throw ValidationError("--x is required");
  const TreeSkeleton tree = tree_from_json(load_json(path));
  const TreeShift shift = build_weights_uwrem(tree, *c.x, split_of(c));
  Json j = weights_to_json(shift);
  j["source"] = rule_json(*c.x, c);
  emit(j, c);
  return kOk;
}

int run_check(const std::string& path, const std::string& weights, const Common& c) {
  require_depth(c.depth, 4);
  const auto src = load_shift(path, weights, c.x, c);
  const PropertyReport r = property_report(src.shift, c.depth, c.tol);
  Json j = to_json(r);
  j["source"] = src.provenance;
  emit(j, c);
  return r.is_2isometry && r.hypo_plus && r.kernel_condition ? kOk : kFail;
}

int run_invariant(const std::string& path, const std::string& weights, const Common& c) {
  const auto src = load_shift(path, weights, c.x, c);
  Json j;
  try {
    j = to_json(decompose(src.shift, c.tol));
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  j["source"] = src.provenance;
  emit(j, c);
  return kOk;
}

int run_equiv(const std::string& path_a, const std::string& path_b, std::optional<double> x_b,
              const Common& c) {
  if (!c.x) throw ValidationError("--x is required");
  const auto a = load_shift(path_a, "", c.x, c);
  const auto b = load_shift(path_b, "", x_b ? x_b : c.x, c);
  CanonicalInvariant ia, ib;
  try {
    ia = decompose(a.shift, c.tol);
    ib = decompose(b.shift, c.tol);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  const EquivalenceVerdict v = equiv_tree_shifts(ia, ib);
  Json j = to_json(v);
  j["invariants"] = {to_json(ia), to_json(ib)};
  emit(j, c);
  if (v.indeterminate) return kIndeterminate;
  return v.equivalent ? kOk : kFail;
}

struct DualInput {
  std::string tree;
  std::string atoms;
  std::optional<double> brownian;
  bool scalar = false;
};

ShiftSpec dual_spec(const DualInput& in, const Common& c) {
  const int chosen = !in.tree.empty() + !in.atoms.empty() + in.brownian.has_value() + in.scalar;
  if (chosen != 1) throw ValidationError("give exactly one of TREE, --atoms, --brownian, --scalar");
  if (!in.tree.empty()) return load_shift(in.tree, "", c.x, c).shift;
  if (!in.atoms.empty()) return DiagonalOpShift{spectral_from_json(load_json(in.atoms))};
  if (in.brownian) return BrownianShift{*in.brownian};
  if (!c.x) throw ValidationError("--scalar needs --x");
  return ScalarShift{XiRule{*c.x}};
}

int run_dual(const DualInput& in, const Common& c) {
  require_depth(c.depth, 4);
  const ShiftSpec spec = dual_spec(in, c);
  DualReport r;
  try {
    r = classify_c_classes(spec, c.depth);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  emit(to_json(r), c);
  return kOk;
}

// Demos print a short human-readable account and fail on any broken expectation.
class Demo {
 public:
  void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok    " : "  FAIL  ") << what << '\n';
    failed_ = failed_ || !ok;
  }
  int exit_code() const { return failed_ ? kFail : kOk; }

 private:
  bool failed_ = false;
};

std::string describe(const CanonicalInvariant& inv) {
  std::string s = "x = " + std::to_string(inv.x) + ", j = (";
  for (int k = 1; k <= inv.j.support_end(); ++k) s += std::to_string(inv.j[k]) + ",";
  return s + "0,...)";
}

int demo_example(const Common& c) {
  const double x = c.x.value_or(std::sqrt(2.0));
  const auto [t1, t2] = example_two_plus_three();
  const auto i1 = decompose(build_weights_uwrem(t1, x, split_of(c)), c.tol);
  const auto i2 = decompose(build_weights_uwrem(t2, x, split_of(c)), c.tol);
  const auto v = equiv_tree_shifts(i1, i2);
  const bool iso = graph_isomorphic(t1, t2);
  std::cout << "tree 1: " << describe(i1) << '\n' << "tree 2: " << describe(i2) << '\n';
  std::cout << "equivalent: " << (v.equivalent ? "true" : "false")
            << ", graph-isomorphic: " << (iso ? "true" : "false") << '\n';
  Demo d;
  d.check(v.equivalent, "unitarily equivalent");
  d.check(!iso, "trees are not graph-isomorphic");
  d.check(i1.j == BranchingDegrees({1, 2}) && i2.j == i1.j, "j = (1,2,0,...)");
  return d.exit_code();
}

int demo_eta_kappa(int eta, int kappa, const Common& c) {
  const double x = c.x.value_or(std::sqrt(2.0));
  const TreeSkeleton tree = make_eta_kappa(eta, kappa);
  const auto inv = decompose(build_weights_uwrem(tree, x, split_of(c)), c.tol);
  std::cout << "T_{" << eta << "," << kappa << "}: " << describe(inv) << '\n';
  std::cout << "multicyclicity: " << multicyclicity_order(build_weights_uwrem(tree, x), c.tol) << '\n';
  Demo d;
  d.check(std::abs(inv.x - x) <= 1e-12, "x recovered");
  d.check(inv.j[kappa + 1] == eta - 1 && inv.j.total() == eta - 1,
          "j_" + std::to_string(kappa + 1) + " = " + std::to_string(eta - 1) + ", all others zero");
  return d.exit_code();
}

int demo_brownian(const Common& c) {
  const double sigma = 1.0;
  const ShiftSpec spec = BrownianShift{sigma};
  const double limit = 1.0 / (2.0 + sigma * sigma);
  const auto bound = cn_bound(spec, 1, std::max(c.depth, 40));
  const Matrix closed = asymptotic_closed_form(spec, c.depth);
  const auto it = asymptotic_iterative(spec, 50, 52);
  double closed_c = 0.0, iter_c = 0.0;
  const auto t = truncate(spec, c.depth);
  for (Index k = 0; k < t.dimension(); ++k)
    if (t.basis[k].name == "c") closed_c = closed(k, k).real();
  for (std::size_t k = 0; k < it.labels.size(); ++k)
    if (it.labels[k] == "c") iter_c = it.values(k, k).real();
  std::cout << "c_1 = " << bound.c_n << " (smallest singular value squared " << bound.min_singular_sq
            << ")\n"
            << "A scalar entry: closed form " << closed_c << ", iterate n=50 " << iter_c << " -> 1/3\n"
            << "lim c_n = " << cn_limit(spec) << '\n';
  Demo d;
  d.check(detect_class(spec) == DualClass::QuasiBrownian, "quasi-Brownian isometry");
  d.check(std::abs(bound.c_n - 0.5) <= 1e-12, "c_1 = 0.5");
  d.check(bound.min_singular_sq >= bound.c_n - 1e-8, "bound holds on the truncation");
  d.check(std::abs(closed_c - limit) <= 1e-12, "closed-form scalar entry = 1/3");
  d.check(std::abs(iter_c - limit) <= 2e-2, "iterate within 2e-2 of 1/3");
  return d.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-isometry toolkit: weighted shifts on directed trees"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--depth", c.depth, "truncation depth")->capture_default_str();
    sub->add_option("--tol", c.tol, "numerical tolerance")->capture_default_str();
    sub->add_option("--x", c.x, "root norm ||S e_root|| (>= 1)");
    sub->add_option("--seed", c.seed, "seed for a random weight split (default: equal split)");
    sub->add_option("--out", c.out, "also write the JSON result here");
  };

  std::string tree_a, tree_b, weights;
  std::optional<double> x_b;
  DualInput dual;
  std::string demo_name;
  int eta = 3, kappa = 2;

  auto* info = app.add_subcommand("tree-info", "summarize a tree file");
  info->add_option("tree", tree_a)->required();
  add_common(info);

  auto* build = app.add_subcommand("build", "uwrem weights for a tree");
  build->add_option("tree", tree_a)->required();
  add_common(build);

  auto* check = app.add_subcommand("check", "verify 2-isometry, (hypo+) and the kernel condition");
  check->add_option("tree", tree_a)->required();
  check->add_option("--weights", weights, "weight file (instead of --x)");
  add_common(check);

  auto* invariant = app.add_subcommand("invariant", "canonical invariant (x, j)");
  invariant->add_option("tree", tree_a)->required();
  invariant->add_option("--weights", weights, "weight file (instead of --x)");
  add_common(invariant);

  auto* equiv = app.add_subcommand("equiv", "unitary equivalence of two uwrem tree shifts");
  equiv->add_option("tree_a", tree_a)->required();
  equiv->add_option("tree_b", tree_b)->required();
  equiv->add_option("--x-b", x_b, "root norm for the second tree (default --x)");
  add_common(equiv);

  auto* dual_cmd = app.add_subcommand("dual", "Cauchy dual asymptotics and C-classes");
  dual_cmd->add_option("tree", dual.tree, "tree file (with --x)");
  dual_cmd->add_option("--atoms", dual.atoms, "spectral data file of a diagonal operator valued shift");
  dual_cmd->add_option("--brownian", dual.brownian, "Brownian shift with this sigma");
  dual_cmd->add_flag("--scalar", dual.scalar, "scalar shift with weights xi_n(x)");
  add_common(dual_cmd);

  auto* demo = app.add_subcommand("demo", "worked scenarios");
  demo->add_option("name", demo_name)
      ->required()
      ->check(CLI::IsMember({"example-2+3", "eta-kappa", "brownian"}));
  demo->add_option("--eta", eta)->capture_default_str();
  demo->add_option("--kappa", kappa)->capture_default_str();
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*info) return run_tree_info(tree_a, c);
    if (*build) return run_build(tree_a, c);
    if (*check) return run_check(tree_a, weights, c);
    if (*invariant) return run_invariant(tree_a, weights, c);
    if (*equiv) return run_equiv(tree_a, tree_b, x_b, c);
    if (*dual_cmd) return run_dual(dual, c);
    if (demo_name == "example-2+3") return demo_example(c);
    if (demo_name == "eta-kappa") return demo_eta_kappa(eta, kappa, c);
    return demo_brownian(c);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kInvalid;
}
