#include "gft/jordan.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace gft {

namespace {

// Random unitary via QR of a complex Gaussian; used to remix seeds.
Matrix random_unitary(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q;
}

struct ShiftedFactors {
  Matrix pinv;        // (A - lambda I)^+
  Matrix range_q;     // orthonormal range basis of (A - lambda I)
  double sigma_max = 0.0;
};

ShiftedFactors factor_shifted(const Matrix& shifted, double rank_tol) {
  Eigen::BDCSVD<Matrix> svd(shifted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > rank_tol * smax) ++rank;

  ShiftedFactors out;
  out.sigma_max = smax;
  out.range_q = svd.matrixU().leftCols(rank);
  RealVector inv = RealVector::Zero(sv.size());
  for (Index i = 0; i < rank; ++i) inv(i) = 1.0 / sv(i);
  out.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  return out;
}

struct ChainState {
  // vectors[d] holds the depth-d vector of every live chain as columns;
  // frozen chains are moved out once they stop extending.
  std::vector<Matrix> depths;
  std::vector<Chain> frozen;
};

Chain make_chain(const Matrix& a_shifted, std::span<const Vector> vectors) {
  Chain chain;
  for (const Vector& v : vectors) chain.vectors.push_back(v);
  chain.link_residuals.resize(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Vector defect = k == 0 ? Vector(a_shifted * vectors[0])
                                 : Vector(a_shifted * vectors[k] - vectors[k - 1]);
    chain.link_residuals[k] = defect.norm();
  }
  return chain;
}

ChainSet attempt_chains(const Matrix& a, const Matrix& shifted, Complex lambda,
                        int max_len, const Matrix& seeds,
                        const ShiftedFactors& factors,
                        const KernelProfile& profile, double range_tol,
                        int retry_budget, std::mt19937_64& rng) {
  const Index n = a.rows();
  const Index g = seeds.cols();

  ChainState state;
  state.depths.push_back(seeds);

  Index live = g;
  for (Index level = 2; level <= max_len && live > 0; ++level) {
    Index want = profile.chains_of_length_at_least(level);
    if (profile.approximate) want = std::min(want, live);
    if (want > live)
      throw NumericalError("compute_chains: profile predicts " +
                           std::to_string(want) + " chains of length >= " +
                           std::to_string(level) + " but only " +
                           std::to_string(live) + " are live");
    if (want == 0) break;

    // Tips recombine freely: a combination of equal-length chains is again
    // a chain. Pick combinations lying in the range of (A - lambda I).
    Matrix tips = state.depths.back();
    RealVector tip_norms(live);
    for (Index j = 0; j < live; ++j) {
      tip_norms(j) = tips.col(j).norm();
      if (tip_norms(j) == 0.0)
        throw NumericalError("compute_chains: zero chain tip");
    }

    Matrix mix = Matrix::Identity(live, live);
    Index found = 0;
    Matrix combos;
    for (int attempt = 0; attempt <= retry_budget; ++attempt) {
      Matrix tn = tips * mix;
      for (Index j = 0; j < live; ++j) tn.col(j) /= tn.col(j).norm();
      const Matrix defect =
          tn - factors.range_q * (factors.range_q.adjoint() * tn);
      Eigen::BDCSVD<Matrix> svd(defect, Eigen::ComputeFullV);
      const RealVector& sv = svd.singularValues();
      found = 0;
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= range_tol) ++found;
      found = std::min(found + (live - sv.size()), live);
      if (found >= want) {
        // combos ordered by ascending defect: take the most in-range ones
        combos = svd.matrixV().rowwise().reverse().leftCols(want);
        break;
      }
      mix = mix * random_unitary(live, rng);
    }
    if (found < want)
      throw NumericalError(
          "compute_chains: no extendable combination found at length " +
          std::to_string(level) + " though the kernel profile predicts " +
          std::to_string(want));

    // Recombine every live chain: extended ones first, then the complement.
    Eigen::HouseholderQR<Matrix> qr(combos);
    Matrix full = qr.householderQ() * Matrix::Identity(live, live);
    full.leftCols(want) = combos;
    const Matrix recombine = mix * full;

    std::vector<Matrix> new_depths;
    new_depths.reserve(state.depths.size() + 1);
    for (const Matrix& d : state.depths) new_depths.push_back(d * recombine);

    // freeze the chains that stop at level - 1
    for (Index j = want; j < live; ++j) {
      std::vector<Vector> vecs;
      for (const Matrix& d : new_depths) vecs.push_back(d.col(j));
      state.frozen.push_back(make_chain(shifted, vecs));
    }
    for (Matrix& d : new_depths) d.conservativeResize(Eigen::NoChange, want);

    Matrix next(n, want);
    for (Index j = 0; j < want; ++j)
      next.col(j) = factors.pinv * new_depths.back().col(j);
    new_depths.push_back(std::move(next));
    state.depths = std::move(new_depths);
    live = want;
  }

  ChainSet set;
  set.lambda = lambda;
  for (Index j = 0; j < live; ++j) {
    std::vector<Vector> vecs;
    for (const Matrix& d : state.depths) vecs.push_back(d.col(j));
    set.chains.push_back(make_chain(shifted, vecs));
  }
  for (Chain& c : state.frozen) set.chains.push_back(std::move(c));
  // deterministic order: longest chains first, seeds order within a length
  std::stable_sort(set.chains.begin(), set.chains.end(),
                   [](const Chain& x, const Chain& y) {
                     return x.length() > y.length();
                   });
  return set;
}

}  // namespace

Index ChainSet::total_vectors() const {
  Index total = 0;
  for (const Chain& c : chains) total += c.length();
  return total;
}

Index ChainSet::chains_of_length_at_least(Index l) const {
  Index count = 0;
  for (const Chain& c : chains)
    if (c.length() >= l) ++count;
  return count;
}

ChainSet compute_chains(const Matrix& a, Complex lambda, int max_len,
                        const Matrix& seed_kernel, const ChainOptions& options) {
  if (a.rows() != a.cols()) throw InputError("compute_chains: matrix must be square");
  if (max_len < 1) throw InputError("compute_chains: max_len must be >= 1");
  if (seed_kernel.cols() < 1 || seed_kernel.rows() != a.rows())
    throw InputError("compute_chains: seed kernel must be N x g with g >= 1");

  const Index n = a.rows();
  Matrix shifted = a;
  shifted.diagonal().array() -= lambda;

  const double rank_tol =
      options.rank_tol > 0.0 ? options.rank_tol : defaults::rank_tol(n);
  const ShiftedFactors factors = factor_shifted(shifted, rank_tol);
  const double range_tol =
      options.range_tol > 0.0 ? options.range_tol : std::sqrt(rank_tol);
  const double chain_tol = options.chain_tol > 0.0
                               ? options.chain_tol
                               : 1e-8 * std::max(a.operatorNorm(), 1.0);

  for (Index j = 0; j < seed_kernel.cols(); ++j) {
    const double defect = (shifted * seed_kernel.col(j)).norm();
    if (defect > std::max(chain_tol, range_tol * factors.sigma_max))
      throw InputError("compute_chains: seed column " + std::to_string(j) +
                       " is not in the kernel (defect " +
                       std::to_string(defect) + ")");
  }

  const KernelProfile profile =
      kernel_dim_profile(a, lambda, max_len + 1, rank_tol);

  std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ull);
  Matrix seeds = seed_kernel;
  std::string last_error;
  for (int attempt = 0; attempt <= options.retry_budget; ++attempt) {
    try {
      ChainSet set = attempt_chains(a, shifted, lambda, max_len, seeds, factors,
                                    profile, range_tol, options.retry_budget, rng);
      // accept only a numerically independent union within tolerance
      Matrix stack(n, set.total_vectors());
      Index col = 0;
      for (const Chain& c : set.chains)
        for (const Vector& v : c.vectors) stack.col(col++) = v;
      if (numerical_rank(stack, range_tol) != stack.cols())
        throw NumericalError("compute_chains: chain vectors lost independence");
      const double defect = chain_residual(a, lambda, set);
      if (defect > chain_tol)
        throw NumericalError("compute_chains: residual " + std::to_string(defect) +
                             " exceeds tolerance " + std::to_string(chain_tol));
      return set;
    } catch (const NumericalError& err) {
      last_error = err.what();
      seeds = seed_kernel * random_unitary(seed_kernel.cols(), rng);
    }
  }
  throw NumericalError(last_error + " (after " +
                       std::to_string(options.retry_budget) + " reseedings)");
}

double chain_residual(const Matrix& a, Complex lambda, const ChainSet& chains) {
  Matrix shifted = a;
  shifted.diagonal().array() -= lambda;
  double worst = 0.0;
  for (const Chain& c : chains.chains) {
    for (std::size_t k = 0; k < c.vectors.size(); ++k) {
      const Vector defect =
          k == 0 ? Vector(shifted * c.vectors[0])
                 : Vector(shifted * c.vectors[k] - c.vectors[k - 1]);
      worst = std::max(worst, defect.norm());
    }
  }
  return worst;
}

Basis assemble_jordan_basis(const Spectrum& spectrum,
                            const std::vector<ChainSet>& per_eigenvalue_chains,
                            double rank_tol) {
  if (per_eigenvalue_chains.size() != spectrum.distinct.size())
    throw InputError("assemble_jordan_basis: need one chain set per distinct eigenvalue");

  Index total = 0;
  std::string missing;
  for (std::size_t i = 0; i < spectrum.distinct.size(); ++i) {
    const auto& d = spectrum.distinct[i];
    const Index have = per_eigenvalue_chains[i].total_vectors();
    total += have;
    if (have != d.algebraic) {
      missing += (missing.empty() ? "" : "; ");
      missing += "lambda " + std::to_string(d.value.real()) +
                 (d.value.imag() < 0 ? "-" : "+") +
                 std::to_string(std::abs(d.value.imag())) + "i: " +
                 std::to_string(have) + " of " + std::to_string(d.algebraic);
    }
  }
  if (!missing.empty())
    throw NumericalError("assemble_jordan_basis: missing chain vectors (" +
                         missing + ")");

  const Index n = spectrum.total();
  if (total != n)
    throw NumericalError("assemble_jordan_basis: vector count " +
                         std::to_string(total) + " does not match N = " +
                         std::to_string(n));

  Matrix v(n, n);
  std::vector<BasisComponent> components;
  Index col = 0;
  for (std::size_t i = 0; i < spectrum.distinct.size(); ++i) {
    BasisComponent comp;
    comp.lambda = spectrum.distinct[i].value;
    comp.col_begin = col;
    for (const Chain& chain : per_eigenvalue_chains[i].chains) {
      comp.chain_lengths.push_back(chain.length());
      for (std::size_t k = 0; k < chain.vectors.size(); ++k) {
        v.col(col++) = chain.vectors[k];
        comp.provenance.push_back(k == 0 ? ColumnProvenance::Proper
                                         : ColumnProvenance::Chain);
      }
    }
    comp.col_end = col;
    components.push_back(std::move(comp));
  }
  return Basis(std::move(v), std::move(components), rank_tol);
}

CostEstimate estimate_chain_cost(Index n, Index algebraic, Index geometric,
                                 Index eigenvalue_index, double sec_per_flop,
                                 double mem_rate) {
  if (!(algebraic >= geometric && geometric >= 1))
    throw InputError("estimate_chain_cost: need a_i >= g_i >= 1");
  if (eigenvalue_index < 1)
    throw InputError("estimate_chain_cost: need m_i >= 1");

  CostEstimate est;
  est.params.sec_per_flop = sec_per_flop;
  est.params.sec_per_entry = mem_rate;
  est.b_a = eigenvalue_index * (algebraic - geometric);

  const double m = static_cast<double>(n);
  const Index known = n - (algebraic - geometric);
  for (Index j = 1; j <= est.b_a; ++j) {
    const double nj = static_cast<double>(std::min(known + (j - 1), n));
    est.flop_time += sec_per_flop * (est.params.svd_k * m * nj * nj +
                                     est.params.svd_k_prime * m * m * m +
                                     2.0 * m * nj);
    est.mem_time += m * nj * mem_rate;
  }
  est.total = est.flop_time + est.mem_time;
  return est;
}

}  // namespace gft
