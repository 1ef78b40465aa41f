#pragma once

#include "gft/types.hpp"

#include <vector>

namespace gft {

enum class ColumnProvenance { Proper, Chain, Completion };

struct BasisComponent {
  Complex lambda{0.0, 0.0};
  Index col_begin = 0;
  Index col_end = 0; // exclusive
  std::vector<ColumnProvenance> provenance; // one entry per column
  // Lengths of the Jordan chains stored contiguously in this component,
  // in column order. Empty when the subspace structure is unknown
  // (completion columns have no chain bookkeeping).
  std::vector<Index> chain_lengths;

  Index width() const { return col_end - col_begin; }
};

// Full graph Fourier basis: V plus the per-eigenvalue column grouping.
// Construction validates that the component ranges partition the columns
// and that V has full numerical rank.
class Basis {
 public:
  Basis(Matrix v, std::vector<BasisComponent> components, double rank_tol = -1.0);

  const Matrix& matrix() const { return v_; }
  const std::vector<BasisComponent>& components() const { return components_; }
  const BasisComponent& component(Index i) const { return components_.at(static_cast<std::size_t>(i)); }
  Index size() const { return v_.rows(); }
  Index component_count() const { return static_cast<Index>(components_.size()); }
  double conditioning() const { return conditioning_; }

  bool has_completion() const;
  bool has_chain_info() const; // every column's Jordan subspace is known

  Matrix component_columns(Index i) const;

 private:
  Matrix v_;
  std::vector<BasisComponent> components_;
  double conditioning_ = 1.0;
};

}  // namespace gft
