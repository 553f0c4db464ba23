#include "twoiso/json_io.hpp"

#include <fstream>
#include <sstream>

#include "twoiso/errors.hpp"

namespace twoiso {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ValidationError("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string split_name(const SplitChoice& s) {
  return s.strategy == SplitChoice::Strategy::Equal ? "uwrem-equal" : "uwrem-random";
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("cannot parse '" + path + "': " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Json to_json(const TreeSkeleton& tree) {
  Json edges = Json::array();
  for (const auto& [p, c] : tree.edges()) edges.push_back(Json::array({p, c}));
  return {{"root", tree.root()}, {"edges", edges}, {"skeleton_depth", tree.skeleton_depth()}};
}

TreeSkeleton tree_from_json(const Json& j) {
  return guarded("tree", [&] {
    if (!j.is_object()) throw ValidationError("tree must be a JSON object");
    std::vector<TreeSkeleton::Edge> edges;
    for (const auto& e : j.value("edges", Json::array())) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be [parent, child]");
      edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    return TreeSkeleton::from_edges(j.at("root").get<std::string>(), edges,
                                    j.at("skeleton_depth").get<int>());
  });
}

Json weights_to_json(const TreeShift& shift) {
  Json w = Json::object();
  for (const auto& [label, value] : shift.weights) w[label] = complex_to_json(value);
  Json out{{"weights", w}};
  if (shift.continuation.xi_x) {
    out["continuation"] = {{"xi", *shift.continuation.xi_x}};
  } else {
    out["continuation"] = {{"constant", complex_to_json(shift.continuation.constant)}};
  }
  return out;
}

Json uwrem_rule_to_json(const UwremRule& rule) {
  Json out{{"rule", split_name(rule.split)}, {"x", rule.x}};
  if (rule.split.strategy == SplitChoice::Strategy::Random) out["seed"] = rule.split.seed;
  return out;
}

std::optional<UwremRule> uwrem_rule_from_json(const Json& j) {
  return guarded("weight rule", [&]() -> std::optional<UwremRule> {
    if (!j.contains("rule")) return std::nullopt;
    const auto name = j.at("rule").get<std::string>();
    UwremRule rule;
    rule.x = j.at("x").get<double>();
    if (name == "uwrem-equal") {
      rule.split = SplitChoice::equal();
    } else if (name == "uwrem-random") {
      rule.split = SplitChoice::random(j.value("seed", std::uint64_t{0}));
    } else {
      throw ValidationError("unknown weight rule '" + name + "'");
    }
    return rule;
  });
}

TreeShift tree_shift_from_json(const TreeSkeleton& tree, const Json& j) {
  if (auto rule = uwrem_rule_from_json(j)) return build_weights_uwrem(tree, rule->x, rule->split);
  return guarded("weights", [&] {
    TreeShift shift{tree, {}, ContinuationRule{}};
    for (const auto& [label, value] : j.at("weights").items()) {
      shift.weights[label] = complex_from_json(value);
    }
    if (j.contains("continuation")) {
      const auto& c = j.at("continuation");
      if (c.contains("xi")) {
        shift.continuation.xi_x = c.at("xi").get<double>();
      } else {
        shift.continuation.constant = complex_from_json(c.at("constant"));
      }
    }
    validate(ShiftSpec{shift});
    return shift;
  });
}

Json to_json(const CanonicalInvariant& inv) {
  Json j = Json::array();
  for (const auto& [k, jk] : inv.j.nonzero()) j.push_back(Json::array({k, jk}));
  return {{"x", inv.x}, {"j", j}, {"is_isometric", inv.is_isometric}};
}

CanonicalInvariant invariant_from_json(const Json& j) {
  return guarded("invariant", [&] {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("j")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return make_invariant(j.at("x").get<double>(), BranchingDegrees::from_pairs(pairs));
  });
}

Json to_json(const SpectralData& spectral) {
  Json atoms = Json::array();
  for (const auto& a : spectral.atoms) atoms.push_back(Json::array({a.lambda, a.multiplicity}));
  return {{"atoms", atoms}};
}

SpectralData spectral_from_json(const Json& j) {
  return guarded("spectral data", [&] {
    SpectralData s;
    for (const auto& a : j.at("atoms")) s.atoms.push_back({a.at(0).get<double>(), a.at(1).get<int>()});
    validate(s);
    return s;
  });
}

Json to_json(const PropertyReport& r) {
  Json j{{"depth", r.depth},
         {"interior_generation", r.interior_generation},
         {"tolerance", r.tolerance},
         {"defect_2iso", r.defect_2iso},
         {"is_2isometry", r.is_2isometry},
         {"is_2hyperexpansive", r.is_2hyperexpansive},
         {"hyperexpansive_margin", r.hyperexpansive_margin},
         {"kernel_condition", r.kernel_condition},
         {"kernel_residual", r.kernel_residual},
         {"kernel_dim_svd", r.kernel_dim_svd},
         {"hypo_plus", r.hypo_plus},
         {"hypo_plus_spread", r.hypo_plus_spread},
         {"hypo_plus_alpha", r.hypo_plus_alpha},
         {"quasi_brownian", r.quasi_brownian},
         {"quasi_brownian_residual", r.quasi_brownian_residual},
         {"norm_sq", r.norm_sq}};
  j["kernel_dim_closed_form"] = r.kernel_dim_closed_form ? Json(*r.kernel_dim_closed_form) : Json();
  j["kernel_projector_mismatch"] =
      r.kernel_projector_mismatch ? Json(*r.kernel_projector_mismatch) : Json();
  return j;
}

PropertyReport property_report_from_json(const Json& j) {
  return guarded("property report", [&] {
    PropertyReport r;
    r.depth = j.at("depth").get<int>();
    r.interior_generation = j.at("interior_generation").get<int>();
    r.tolerance = j.at("tolerance").get<double>();
    r.defect_2iso = j.at("defect_2iso").get<double>();
    r.is_2isometry = j.at("is_2isometry").get<bool>();
    r.is_2hyperexpansive = j.at("is_2hyperexpansive").get<bool>();
    r.hyperexpansive_margin = j.at("hyperexpansive_margin").get<double>();
    r.kernel_condition = j.at("kernel_condition").get<bool>();
    r.kernel_residual = j.at("kernel_residual").get<double>();
    r.kernel_dim_svd = j.at("kernel_dim_svd").get<int>();
    if (!j.at("kernel_dim_closed_form").is_null()) {
      r.kernel_dim_closed_form = j.at("kernel_dim_closed_form").get<int>();
    }
    if (!j.at("kernel_projector_mismatch").is_null()) {
      r.kernel_projector_mismatch = j.at("kernel_projector_mismatch").get<double>();
    }
    r.hypo_plus = j.at("hypo_plus").get<bool>();
    r.hypo_plus_spread = j.at("hypo_plus_spread").get<double>();
    r.hypo_plus_alpha = j.at("hypo_plus_alpha").get<std::map<std::string, double>>();
    r.quasi_brownian = j.at("quasi_brownian").get<bool>();
    r.quasi_brownian_residual = j.at("quasi_brownian_residual").get<double>();
    r.norm_sq = j.at("norm_sq").get<double>();
    return r;
  });
}

Json to_json(const EquivalenceVerdict& v) {
  Json j{{"equivalent", v.equivalent},
         {"indeterminate", v.indeterminate},
         {"reason", to_string(v.reason)}};
  j["witness"] = v.permutation ? Json{{"permutation", *v.permutation}} : Json();
  return j;
}

EquivalenceVerdict verdict_from_json(const Json& j) {
  return guarded("verdict", [&] {
    EquivalenceVerdict v;
    v.equivalent = j.at("equivalent").get<bool>();
    v.indeterminate = j.at("indeterminate").get<bool>();
    v.reason = verdict_reason_from_string(j.at("reason").get<std::string>());
    if (!j.at("witness").is_null()) {
      v.permutation = j.at("witness").at("permutation").get<std::vector<int>>();
    }
    return v;
  });
}

Json matrix_to_json(const Matrix& m, const std::vector<std::string>& labels) {
  std::vector<double> re;
  std::vector<double> im;
  bool complex_entries = false;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
      complex_entries |= m(r, c).imag() != 0.0;
    }
  }
  Json j{{"rows", m.rows()}, {"cols", m.cols()}, {"labels", labels}, {"data", re}};
  if (complex_entries) j["imag"] = im;
  return j;
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    const auto re = j.at("data").get<std::vector<double>>();
    const auto im = j.contains("imag") ? j.at("imag").get<std::vector<double>>()
                                       : std::vector<double>(re.size(), 0.0);
    if (re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size()) {
      throw ValidationError("matrix data length does not match rows * cols");
    }
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) m(r, c) = Complex(re[r * cols + c], im[r * cols + c]);
    }
    return m;
  });
}

Json to_json(const DualReport& r) {
  Json cn = Json::array();
  for (const auto& [n, c] : r.c_n_values) cn.push_back(Json::array({n, c}));
  Json iter = matrix_to_json(r.a_iterative.values, r.a_iterative.labels);
  iter["coordinates"] = r.a_iterative.coordinates;
  return {{"class", to_string(r.detected)},
          {"c_dot0", r.c_dot0},
          {"c_0dot", r.c_0dot},
          {"c_00", r.c_00},
          {"norm_sq", r.norm_sq},
          {"A_closed", matrix_to_json(r.a_closed, r.basis)},
          {"iterations", r.iterations},
          {"A_iterative", iter},
          {"c_n", cn}};
}

DualReport dual_report_from_json(const Json& j) {
  return guarded("dual report", [&] {
    DualReport r;
    const auto cls = j.at("class").get<std::string>();
    if (cls == "kernel-condition") {
      r.detected = DualClass::KernelCondition;
    } else if (cls == "quasi-brownian") {
      r.detected = DualClass::QuasiBrownian;
    } else {
      throw ValidationError("unknown dual class '" + cls + "'");
    }
    r.c_dot0 = j.at("c_dot0").get<bool>();
    r.c_0dot = j.at("c_0dot").get<bool>();
    r.c_00 = j.at("c_00").get<bool>();
    r.norm_sq = j.at("norm_sq").get<double>();
    r.a_closed = matrix_from_json(j.at("A_closed"));
    r.basis = j.at("A_closed").at("labels").get<std::vector<std::string>>();
    r.iterations = j.at("iterations").get<int>();
    const auto& iter = j.at("A_iterative");
    r.a_iterative.values = matrix_from_json(iter);
    r.a_iterative.labels = iter.at("labels").get<std::vector<std::string>>();
    r.a_iterative.coordinates = iter.at("coordinates").get<std::vector<Index>>();
    for (const auto& p : j.at("c_n")) r.c_n_values.emplace_back(p.at(0).get<int>(), p.at(1).get<double>());
    return r;
  });
}

}  // namespace twoiso
