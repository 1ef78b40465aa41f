#include "gft/basis.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <string>

namespace gft {

Basis::Basis(Matrix v, std::vector<BasisComponent> components, double rank_tol)
    : v_(std::move(v)), components_(std::move(components)) {
  const Index n = v_.rows();
  if (n == 0 || v_.cols() != n)
    throw InputError("basis matrix must be square and nonempty");
  if (!v_.allFinite()) throw NumericalError("basis has non-finite entries");
  if (components_.empty()) throw InputError("basis needs at least one component");

  // column ranges must partition [0, N) in order
  Index cursor = 0;
  for (const BasisComponent& c : components_) {
    if (c.col_begin != cursor || c.col_end <= c.col_begin)
      throw InputError("basis component ranges must partition the columns");
    if (static_cast<Index>(c.provenance.size()) != c.width())
      throw InputError("basis component provenance must cover every column");
    if (!c.chain_lengths.empty()) {
      const Index sum = std::accumulate(c.chain_lengths.begin(),
                                        c.chain_lengths.end(), Index{0});
      if (sum != c.width())
        throw InputError("basis component chain lengths do not sum to its width");
    }
    cursor = c.col_end;
  }
  if (cursor != n)
    throw InputError("basis component ranges must cover all columns");

  if (rank_tol <= 0.0) rank_tol = defaults::rank_tol(n);
  Eigen::BDCSVD<Matrix> svd(v_);
  const RealVector& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > rank_tol * smax) ++rank;
  if (rank != n)
    throw NumericalError("basis is numerically rank deficient: rank " +
                         std::to_string(rank) + " of " + std::to_string(n));
  conditioning_ = smin > 0.0 ? smax / smin
                             : std::numeric_limits<double>::infinity();
}

bool Basis::has_completion() const {
  for (const BasisComponent& c : components_)
    for (ColumnProvenance p : c.provenance)
      if (p == ColumnProvenance::Completion) return true;
  return false;
}

bool Basis::has_chain_info() const {
  for (const BasisComponent& c : components_)
    if (c.chain_lengths.empty()) return false;
  return true;
}

Matrix Basis::component_columns(Index i) const {
  const BasisComponent& c = component(i);
  return v_.middleCols(c.col_begin, c.width());
}

}  // namespace gft
