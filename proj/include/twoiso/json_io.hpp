#pragma once

// JSON file formats.
//
//   tree        {"root": r, "edges": [[parent, child], ...], "skeleton_depth": D}
//   weights     {"weights": {label: [re, im], ...},
//                "continuation": {"xi": x} | {"constant": [re, im]}}   (optional)
//               or {"rule": "uwrem-equal" | "uwrem-random", "x": x, "seed": s}
//   invariant   {"x": x, "j": [[k, j_k], ...]}
//   spectral    {"atoms": [[lambda, multiplicity], ...]}
//
// Reports (property, verdict, dual) serialize every residual as a double and
// matrices as {"rows", "cols", "labels", "data"} with row-major real parts
// ("imag" is added only when some entry is not real).

#include <optional>
#include <string>

#include "json.hpp"
#include "twoiso/classifier.hpp"
#include "twoiso/directed_tree.hpp"
#include "twoiso/dual_analysis.hpp"
#include "twoiso/model_builder.hpp"
#include "twoiso/operator_lab.hpp"

namespace twoiso {

using Json = nlohmann::json;

/// Reads and parses a JSON file; ValidationError on I/O or syntax errors.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Json to_json(const TreeSkeleton& tree);
TreeSkeleton tree_from_json(const Json& j);

/// Provenance of uwrem-built weights, recorded in weight files and reports.
struct UwremRule {
  double x = 1.0;
  SplitChoice split;
};

Json weights_to_json(const TreeShift& shift);
Json uwrem_rule_to_json(const UwremRule& rule);
/// Either an explicit weight map or a uwrem rule applied to `tree`.
TreeShift tree_shift_from_json(const TreeSkeleton& tree, const Json& j);
std::optional<UwremRule> uwrem_rule_from_json(const Json& j);

Json to_json(const CanonicalInvariant& inv);
CanonicalInvariant invariant_from_json(const Json& j);

Json to_json(const SpectralData& spectral);
SpectralData spectral_from_json(const Json& j);

Json to_json(const PropertyReport& r);
PropertyReport property_report_from_json(const Json& j);

Json to_json(const EquivalenceVerdict& v);
EquivalenceVerdict verdict_from_json(const Json& j);

Json matrix_to_json(const Matrix& m, const std::vector<std::string>& labels);
Matrix matrix_from_json(const Json& j);

Json to_json(const DualReport& r);
DualReport dual_report_from_json(const Json& j);

}  // namespace twoiso
