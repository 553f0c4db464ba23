#include "twoiso/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "twoiso/errors.hpp"

namespace twoiso {

namespace {

constexpr std::pair<VerdictReason, const char*> kReasonNames[] = {
    {VerdictReason::XMismatch, "x-mismatch"},
    {VerdictReason::JSequenceMismatch, "j-sequence-mismatch"},
    {VerdictReason::JSumMismatch, "j-sum-mismatch"},
    {VerdictReason::AtomMultisetMismatch, "atom-multiset-mismatch"},
    {VerdictReason::MatchCaseI, "match-case-i"},
    {VerdictReason::MatchCaseII, "match-case-ii"},
    {VerdictReason::PermutationFound, "permutation-found"},
    {VerdictReason::NoPermutation, "no-permutation"},
    {VerdictReason::IndeterminateTolerance, "indeterminate-tolerance"},
};

EquivalenceVerdict verdict(bool equivalent, VerdictReason reason) {
  return {equivalent, false, reason, std::nullopt};
}

EquivalenceVerdict indeterminate() {
  return {false, true, VerdictReason::IndeterminateTolerance, std::nullopt};
}

// Kuhn's augmenting paths on the "compatible" relation.
std::optional<std::vector<int>> perfect_matching(std::size_t n,
                                                 const std::function<bool(int, int)>& compatible) {
  std::vector<int> match_right(n, -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int left, std::vector<char>& seen) {
    for (int right = 0; right < static_cast<int>(n); ++right) {
      if (seen[right] || !compatible(left, right)) continue;
      seen[right] = 1;
      if (match_right[right] < 0 || augment(match_right[right], seen)) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  };
  for (int left = 0; left < static_cast<int>(n); ++left) {
    std::vector<char> seen(n, 0);
    if (!augment(left, seen)) return std::nullopt;
  }
  std::vector<int> perm(n);
  for (int right = 0; right < static_cast<int>(n); ++right) perm[match_right[right]] = right;
  return perm;
}

}  // namespace

std::string to_string(VerdictReason r) {
  for (const auto& [value, name] : kReasonNames) {
    if (value == r) return name;
  }
  return "unknown";
}

VerdictReason verdict_reason_from_string(const std::string& s) {
  for (const auto& [value, name] : kReasonNames) {
    if (s == name) return value;
  }
  throw ValidationError("unknown verdict reason '" + s + "'");
}

EquivalenceVerdict equiv_tree_shifts(const CanonicalInvariant& a, const CanonicalInvariant& b) {
  const double da = std::abs(a.x - 1.0);
  const double db = std::abs(b.x - 1.0);
  auto gray = [](double d) { return d > kEqualTolerance && d <= kGrayZone; };
  if (gray(da) || gray(db)) return indeterminate();

  const bool iso_a = da <= kEqualTolerance;
  const bool iso_b = db <= kEqualTolerance;
  if (iso_a && iso_b) {
    return a.j.total() == b.j.total() ? verdict(true, VerdictReason::MatchCaseII)
                                      : verdict(false, VerdictReason::JSumMismatch);
  }
  if (iso_a != iso_b) return verdict(false, VerdictReason::XMismatch);

  if (!(a.j == b.j)) return verdict(false, VerdictReason::JSequenceMismatch);
  const double dx = std::abs(a.x - b.x);
  if (dx > kGrayZone) return verdict(false, VerdictReason::XMismatch);
  if (dx > kEqualTolerance) return indeterminate();
  return verdict(true, VerdictReason::MatchCaseI);
}

std::vector<Complex> weight_prefix(const ScalarShift& s, int len) {
  std::vector<Complex> out;
  for (int n = 0; n < len; ++n) out.push_back(s.weight(n));
  return out;
}

EquivalenceVerdict equiv_shift_sums(const std::vector<std::vector<Complex>>& a,
                                    const std::vector<std::vector<Complex>>& b, int prefix_len) {
  if (prefix_len < 1) throw DomainError("prefix_len must be positive");
  auto moduli = [prefix_len](const std::vector<std::vector<Complex>>& side) {
    std::vector<std::vector<double>> out;
    for (const auto& seq : side) {
      if (static_cast<int>(seq.size()) < prefix_len) {
        throw DomainError("weight sequence shorter than the compared prefix");
      }
      std::vector<double> m;
      for (int n = 0; n < prefix_len; ++n) {
        const double r = std::abs(seq[n]);
        if (r == 0.0) throw DomainError("zero weight: shift is not injective");
        m.push_back(r);
      }
      out.push_back(std::move(m));
    }
    return out;
  };
  const auto ma = moduli(a);
  const auto mb = moduli(b);
  if (ma.size() != mb.size()) return verdict(false, VerdictReason::NoPermutation);
  auto compatible = [&](int i, int k) {
    for (int n = 0; n < prefix_len; ++n) {
      if (std::abs(ma[i][n] - mb[k][n]) > kEqualTolerance) return false;
    }
    return true;
  };
  auto perm = perfect_matching(ma.size(), compatible);
  if (!perm) return verdict(false, VerdictReason::NoPermutation);
  auto v = verdict(true, VerdictReason::PermutationFound);
  v.permutation = std::move(perm);
  return v;
}

EquivalenceVerdict equiv_diagonal_opshifts(const SpectralData& a, const SpectralData& b) {
  validate(a);
  validate(b);
  const auto la = a.expanded();
  const auto lb = b.expanded();
  if (la.size() != lb.size()) return verdict(false, VerdictReason::AtomMultisetMismatch);
  auto order = [](const std::vector<double>& l) {
    std::vector<int> idx(l.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int p, int q) { return l[p] < l[q]; });
    return idx;
  };
  const auto oa = order(la);
  const auto ob = order(lb);
  std::vector<int> perm(la.size());
  for (std::size_t k = 0; k < la.size(); ++k) {
    if (std::abs(la[oa[k]] - lb[ob[k]]) > kEqualTolerance) {
      return verdict(false, VerdictReason::AtomMultisetMismatch);
    }
    perm[oa[k]] = ob[k];
  }
  auto v = verdict(true, VerdictReason::PermutationFound);
  v.permutation = std::move(perm);
  return v;
}

Matrix construct_intertwiner(const DiagonalOpShift& a, const DiagonalOpShift& b, int depth) {
  if (depth < 2) throw DomainError("truncation depth must be >= 2");
  const auto v = equiv_diagonal_opshifts(a.spectral, b.spectral);
  if (!v.equivalent) throw PreconditionError("construct_intertwiner: operators are not equivalent");
  const auto& perm = *v.permutation;
  const Index m = static_cast<Index>(perm.size());
  Matrix u = Matrix::Zero(depth * m, depth * m);
  for (int level = 0; level < depth; ++level) {
    for (Index i = 0; i < m; ++i) u(level * m + perm[i], level * m + i) = 1.0;
  }
  return u;
}

int multicyclicity_order(const ShiftSpec& spec, double tol) {
  const int depth = std::max(8, kernel_depth(spec) + 4);
  const PropertyReport report = property_report(spec, depth, tol);
  if (!report.is_2isometry) {
    throw PreconditionError("multicyclicity_order: not a 2-isometry (defect " +
                            std::to_string(report.defect_2iso) + ")");
  }
  // Every representable family (rooted tree shifts, scalar and diagonal
  // operator valued shifts, the Brownian model) is completely non-unitary.
  if (const auto* op = std::get_if<DiagonalOpShift>(&spec)) return op->spectral.dimension();
  if (report.kernel_dim_closed_form) return *report.kernel_dim_closed_form;
  return report.kernel_dim_svd;
}

}  // namespace twoiso
