#pragma once

#include "gft/types.hpp"

#include <vector>

namespace gft {

// Output of the dense eigensolver plus the numerical rank of the
// eigenvector matrix. A rank below N signals nontrivial Jordan structure.
struct RawSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;   // columns
  Index solver_rank = 0; // numerical rank of `eigenvectors`
};

struct DistinctEigenvalue {
  Complex value;
  Index algebraic = 0;               // cluster size
  Index geometric = 0;               // dim Ker(A - lambda I)
  std::vector<Index> member_indices; // raw eigenvalue indices in the cluster
};

struct Spectrum {
  std::vector<DistinctEigenvalue> distinct;
  double cluster_tol = defaults::cluster_tol;
  // Raw indices that fell within cluster_tol of more than one centroid;
  // they are assigned to the nearest centroid.
  std::vector<Index> ambiguous_members;

  Index total() const;
  Index find(Complex lambda, double tol) const; // -1 when absent
};

struct ZeroVerdictRow {
  int k = 0;
  Index kernel_dim = 0;     // m_k = dim Ker(A^k)
  Index n_minus_mk = 0;
  double sigma_above = 0.0; // sigma_{N - m_k}(A^k)
  double sigma_below = 0.0; // sigma_{N - m_k + 1}(A^k)
  bool vacuous = false;     // N - m_k == 0: inequality holds vacuously
};

// Singular-value certificate for a numerically multiple zero eigenvalue,
// one row per power of A examined.
struct ZeroVerdict {
  bool is_numerical_zero = false;
  int h_estimate = 0; // maximum Jordan chain length for lambda = 0
  std::vector<ZeroVerdictRow> rows;
  double alpha = defaults::alpha;
  double delta = defaults::delta;
  double scale = 1.0; // sigma_1(A) divided out before testing
  bool truncated = false;
};

// Kernel dimensions of (A - lambda I)^l for l = 0..L and the chain-count
// differences f(l) they induce.
struct KernelProfile {
  Complex lambda{0.0, 0.0};
  std::vector<Index> dims;     // dims[l], l = 0..L
  std::vector<Index> f;        // f[j] = dims[j+2] - dims[j+1]  (f(l) for l >= 2)
  Index eigenspace_dim = 0;    // dims value where f first vanishes / stabilizes
  Index eigenvalue_index = 0;  // smallest power at which dims stabilize
  bool approximate = false;    // f turned increasing before vanishing

  // Number of chains of length >= l; l = 1 gives the geometric multiplicity.
  Index chains_of_length_at_least(Index l) const;
};

RawSpectrum eigendecompose(const Matrix& a);

// Count of singular values above tol * sigma_max; 0 for the zero matrix.
Index numerical_rank(const Matrix& m, double tol);

// Orthonormal basis of the numerical null space (right singular vectors
// with sigma <= tol * sigma_max). Column count is cols - numerical_rank.
Matrix kernel_basis(const Matrix& m, double tol);

// Kernel dimension with an absolute singular-value cutoff.
Index kernel_dim_abs(const Matrix& m, double abs_tol);

Spectrum cluster_eigenvalues(const RawSpectrum& raw, const Matrix& a,
                             double cluster_tol = defaults::cluster_tol);

ZeroVerdict verify_numerical_zero(const Matrix& a,
                                  double alpha = defaults::alpha,
                                  double delta = defaults::delta,
                                  int k_max = 32);

// tol < 0 selects the default relative rank threshold N * eps.
KernelProfile kernel_dim_profile(const Matrix& a, Complex lambda, int l_max,
                                 double tol = -1.0);

}  // namespace gft
