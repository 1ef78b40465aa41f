#pragma once

#include "gft/basis.hpp"
#include "gft/spectral.hpp"
#include "gft/types.hpp"

#include <span>
#include <vector>

namespace gft {

enum class TvNormalization {
  None,
  Columnwise, // each column scaled to unit 1-norm (default reading)
  MatrixNorm, // whole submatrix scaled to unit matrix 1-norm
};

struct TvEntry {
  Complex lambda{0.0, 0.0};
  double tv = 0.0;
  double bound = 0.0; // |1 - lambda| + 1
};

struct TvReport {
  std::vector<TvEntry> entries;
  bool normalized = true;
  std::vector<Index> ordering; // component indices, low to high variation
};

// ||V_i - A V_i||_1 with the matrix 1-norm (max absolute column sum).
double tv_component(const Matrix& a, const Matrix& v_i, bool normalize);
double tv_component(const Matrix& a, const Matrix& v_i, TvNormalization mode);

// Frequency-ordering bound |1 - lambda| + 1.
double tv_bound(Complex lambda);

// Component indices sorted ascending by |1 - lambda| + 1; ties broken by
// ascending |lambda|, then ascending arg(lambda) in [0, 2 pi).
std::vector<Index> tv_order(const Spectrum& spectrum);

// Checks Theorem-style invariance: tv of each component of A equals the tv
// of the permuted component under B = P A P^T. Throws when B does not
// match the permutation of A.
bool tv_isomorphism_check(const Matrix& a, const Matrix& b,
                          std::span<const Index> perm,
                          const std::vector<Matrix>& components,
                          double tol = defaults::tv_tol);

TvReport tv_report(const Matrix& a, const Basis& basis, const Spectrum& spectrum,
                   bool normalize = true);

}  // namespace gft
