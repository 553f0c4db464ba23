#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "twoiso/errors.hpp"
#include "twoiso/json_io.hpp"

using namespace twoiso;

namespace {

template <class T, class Parse>
void check_fixpoint(const T& value, Parse parse) {
  const Json first = to_json(value);
  const Json second = to_json(parse(Json::parse(first.dump())));
  CHECK(first == second);
}

}  // namespace

TEST_CASE("tree files") {
  const auto [t1, t2] = example_two_plus_three();
  const auto back = tree_from_json(to_json(t1));
  CHECK(back.canonical_code() == t1.canonical_code());
  CHECK(back.edges() == t1.edges());
  check_fixpoint(t2, tree_from_json);

  CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"root": "r"})")), ValidationError);
  CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"root": "r", "edges": [["r"]], "skeleton_depth": 1})")),
                  ValidationError);
  CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"root": 3, "edges": [], "skeleton_depth": 0})")),
                  ValidationError);
}

TEST_CASE("data files parse") {
  const std::filesystem::path dir = TWOISO_DATA_DIR;
  const auto t1 = tree_from_json(load_json((dir / "example_2p3_tree1.json").string()));
  const auto t2 = tree_from_json(load_json((dir / "example_2p3_tree2.json").string()));
  CHECK(t1.canonical_code() == example_two_plus_three().first.canonical_code());
  CHECK(t2.canonical_code() == example_two_plus_three().second.canonical_code());
  CHECK(tree_from_json(load_json((dir / "t20.json").string())).canonical_code() ==
        make_eta_kappa(2, 0).canonical_code());
  CHECK_THROWS_AS(tree_from_json(load_json((dir / "leaf_no_ray.json").string())), ValidationError);
  CHECK_THROWS_AS(load_json((dir / "missing.json").string()), ValidationError);
}

TEST_CASE("weight files") {
  const auto tree = example_two_plus_three().first;
  TreeShift shift = build_weights_uwrem(tree, 1.4, SplitChoice::random(5));
  shift.weights["a"] *= Complex(0.0, 1.0);
  const auto back = tree_shift_from_json(tree, Json::parse(weights_to_json(shift).dump()));
  CHECK(back.weights.size() == shift.weights.size());
  for (const auto& [label, w] : shift.weights) CHECK(std::abs(back.weights.at(label) - w) <= 1e-15);
  CHECK(back.continuation.xi_x == shift.continuation.xi_x);

  const UwremRule rule{1.4, SplitChoice::random(5)};
  const Json rj = uwrem_rule_to_json(rule);
  const auto parsed = uwrem_rule_from_json(rj);
  REQUIRE(parsed);
  CHECK(parsed->x == 1.4);
  CHECK(parsed->split.seed == 5);
  const auto built = tree_shift_from_json(tree, rj);
  CHECK(built.weights == build_weights_uwrem(tree, 1.4, SplitChoice::random(5)).weights);

  CHECK_THROWS_AS(tree_shift_from_json(tree, Json::parse(R"({"weights": {"a": [1, 0]}})")),
                  ValidationError);
  CHECK_THROWS_AS(tree_shift_from_json(tree, Json::parse(R"({"rule": "nope", "x": 2})")),
                  ValidationError);
}

TEST_CASE("invariant and spectral files") {
  const auto inv = make_invariant(std::sqrt(2.0), BranchingDegrees({1, 2}));
  check_fixpoint(inv, invariant_from_json);
  CHECK(invariant_from_json(to_json(inv)) == inv);
  const auto parsed = invariant_from_json(Json::parse(R"({"x": 1.5, "j": [[2, 3]]})"));
  CHECK(parsed.j[2] == 3);
  CHECK(parsed.j[1] == 0);

  const SpectralData s{{{1.0, 2}, {std::sqrt(2.0), 1}}};
  check_fixpoint(s, spectral_from_json);
  CHECK_THROWS_AS(spectral_from_json(Json::parse(R"({"atoms": [[0.5, 1]]})")), DomainError);
  CHECK_THROWS_AS(spectral_from_json(Json::parse(R"({"atoms": [[1.5]]})")), ValidationError);
}

TEST_CASE("report round trips") {
  const auto r = property_report(build_weights_uwrem(example_two_plus_three().second, 1.3), 8);
  check_fixpoint(r, property_report_from_json);
  CHECK(property_report_from_json(to_json(r)) == r);

  const auto b = property_report(BrownianShift{1.0}, 6);
  CHECK(property_report_from_json(to_json(b)) == b);

  const auto v = equiv_diagonal_opshifts(SpectralData{{{1.0, 1}, {2.0, 1}}}, SpectralData{{{2.0, 1}, {1.0, 1}}});
  check_fixpoint(v, verdict_from_json);
  CHECK(verdict_from_json(to_json(v)) == v);
  const auto nv = equiv_tree_shifts(make_invariant(1.5, {}), make_invariant(1.5 + 1e-7, {}));
  CHECK(verdict_from_json(to_json(nv)) == nv);

  const auto d = classify_c_classes(BrownianShift{1.0}, 8);
  check_fixpoint(d, dual_report_from_json);
}

TEST_CASE("matrices") {
  Matrix m(2, 3);
  m << 1.0, 2.0, 3.0, Complex(0.0, 1.0), 0.5, -1.0;
  const Json j = matrix_to_json(m, {"a", "b"});
  CHECK(j.contains("imag"));
  CHECK((matrix_from_json(Json::parse(j.dump())) - m).norm() == 0.0);
  const Json real = matrix_to_json(m.real().cast<Complex>(), {});
  CHECK_FALSE(real.contains("imag"));
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})")),
                  ValidationError);
}
