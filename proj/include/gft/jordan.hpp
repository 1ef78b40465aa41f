#pragma once

#include "gft/basis.hpp"
#include "gft/spectral.hpp"
#include "gft/types.hpp"

#include <cstdint>
#include <vector>

namespace gft {

// One Jordan chain [v0, v1, ...]: v0 is a proper eigenvector and
// (A - lambda I) v_k = v_{k-1} for k >= 1. link_residuals[k] is the
// 2-norm defect of that relation (k = 0 checks (A - lambda I) v0).
struct Chain {
  std::vector<Vector> vectors;
  std::vector<double> link_residuals;

  Index length() const { return static_cast<Index>(vectors.size()); }
};

struct ChainSet {
  Complex lambda{0.0, 0.0};
  std::vector<Chain> chains;

  Index total_vectors() const;
  // Number of chains with length >= l (compare against KernelProfile::f).
  Index chains_of_length_at_least(Index l) const;
};

struct ChainOptions {
  double rank_tol = -1.0;   // < 0: N * machine epsilon
  double range_tol = -1.0;  // < 0: same as rank_tol, relative to sigma_max
  double chain_tol = -1.0;  // < 0: 1e-8 * ||A||_2
  int retry_budget = defaults::retry_budget;
  std::uint64_t seed = 0;   // drives the reseeding recombinations
};

// Jordan chains for one distinct eigenvalue. seed_kernel columns must span
// Ker(A - lambda I); chains are grown with the pseudoinverse of
// (A - lambda I), extending only tips that lie in its range.
ChainSet compute_chains(const Matrix& a, Complex lambda, int max_len,
                        const Matrix& seed_kernel,
                        const ChainOptions& options = {});

// Max recurrence defect over all links of all chains; 0 for an empty set.
double chain_residual(const Matrix& a, Complex lambda, const ChainSet& chains);

// Stacks per-eigenvalue chains into a full basis, columns grouped by
// distinct eigenvalue with chains contiguous. Requires one ChainSet per
// spectrum component, total vector count N, and a numerically independent
// union.
Basis assemble_jordan_basis(const Spectrum& spectrum,
                            const std::vector<ChainSet>& per_eigenvalue_chains,
                            double rank_tol = -1.0);

struct CostParams {
  double sec_per_flop = 0.0;
  double svd_k = 4.0;
  double svd_k_prime = 22.0;
  double sec_per_entry = 0.0;
};

struct CostEstimate {
  Index b_a = 0; // m_i * (a_i - g_i) chain-loop iterations
  double flop_time = 0.0;
  double mem_time = 0.0;
  double total = 0.0;
  CostParams params;
};

// Runtime/memory model of the chain loop. Per iteration the flop count is
// c (4 M N(j)^2 + 22 M^3 + 2 M N(j)) with M = N and N(j) growing from the
// known-column count toward N; memory time adds M N(j) * mem_rate.
CostEstimate estimate_chain_cost(Index n, Index algebraic, Index geometric,
                                 Index eigenvalue_index, double sec_per_flop,
                                 double mem_rate);

}  // namespace gft
