#include "gft/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace gft {

namespace {

void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite())
    throw NumericalError(std::string(who) + ": matrix has non-finite entries");
}

RealVector singular_values(const Matrix& m) {
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

// Kernel dimension under an absolute singular-value cutoff. Columns beyond
// min(rows, cols) always belong to the kernel.
Index kernel_dim_with_cut(const RealVector& sv, Index cols, double cut) {
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return cols - rank;
}

}  // namespace

Index Spectrum::total() const {
  Index n = 0;
  for (const auto& d : distinct) n += d.algebraic;
  return n;
}

Index Spectrum::find(Complex lambda, double tol) const {
  for (std::size_t i = 0; i < distinct.size(); ++i)
    if (std::abs(distinct[i].value - lambda) <= tol)
      return static_cast<Index>(i);
  return -1;
}

Index KernelProfile::chains_of_length_at_least(Index l) const {
  if (l <= 0) return 0;
  if (l == 1) return dims.size() > 1 ? dims[1] : 0;
  const std::size_t j = static_cast<std::size_t>(l - 2);
  return j < f.size() ? f[j] : 0;
}

RawSpectrum eigendecompose(const Matrix& a) {
  require_finite(a, "eigendecompose");
  if (a.rows() != a.cols())
    throw InputError("eigendecompose: matrix must be square");

  Eigen::ComplexEigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecompose: eigensolver did not converge");

  RawSpectrum raw;
  raw.eigenvalues = solver.eigenvalues();
  raw.eigenvectors = solver.eigenvectors();
  raw.solver_rank = numerical_rank(raw.eigenvectors, defaults::rank_tol(a.rows()));

  const double scale = a.norm();
  const double residual =
      (a * raw.eigenvectors - raw.eigenvectors * raw.eigenvalues.asDiagonal())
          .cwiseAbs()
          .maxCoeff();
  if (residual > 1e-6 * std::max(scale, 1.0))
    throw NumericalError("eigendecompose: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  return raw;
}

Index numerical_rank(const Matrix& m, double tol) {
  require_finite(m, "numerical_rank");
  if (tol <= 0.0) throw InputError("numerical_rank: tol must be positive");
  const RealVector sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

Matrix kernel_basis(const Matrix& m, double tol) {
  require_finite(m, "kernel_basis");
  if (tol <= 0.0) throw InputError("kernel_basis: tol must be positive");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > tol * smax) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Index kernel_dim_abs(const Matrix& m, double abs_tol) {
  require_finite(m, "kernel_dim_abs");
  return kernel_dim_with_cut(singular_values(m), m.cols(), abs_tol);
}

Spectrum cluster_eigenvalues(const RawSpectrum& raw, const Matrix& a,
                             double cluster_tol) {
  require_finite(a, "cluster_eigenvalues");
  if (cluster_tol <= 0.0)
    throw InputError("cluster_eigenvalues: cluster_tol must be positive");
  const Index n = raw.eigenvalues.size();

  // Greedy pass in solver order, then one nearest-centroid reassignment.
  std::vector<Complex> centroids;
  std::vector<std::vector<Index>> members;
  for (Index i = 0; i < n; ++i) {
    const Complex lam = raw.eigenvalues(i);
    Index best = -1;
    double best_dist = cluster_tol;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double dist = std::abs(lam - centroids[c]);
      if (dist <= best_dist) {
        best = static_cast<Index>(c);
        best_dist = dist;
      }
    }
    if (best < 0) {
      centroids.push_back(lam);
      members.push_back({i});
    } else {
      auto& group = members[static_cast<std::size_t>(best)];
      group.push_back(i);
      Complex sum{0.0, 0.0};
      for (Index j : group) sum += raw.eigenvalues(j);
      centroids[static_cast<std::size_t>(best)] =
          sum / static_cast<double>(group.size());
    }
  }

  Spectrum spectrum;
  spectrum.cluster_tol = cluster_tol;
  std::vector<std::vector<Index>> final_members(centroids.size());
  for (Index i = 0; i < n; ++i) {
    const Complex lam = raw.eigenvalues(i);
    Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    int within = 0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double dist = std::abs(lam - centroids[c]);
      if (dist <= cluster_tol) ++within;
      if (dist < best_dist) {
        best = static_cast<Index>(c);
        best_dist = dist;
      }
    }
    if (within > 1) spectrum.ambiguous_members.push_back(i);
    final_members[static_cast<std::size_t>(best)].push_back(i);
  }

  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const auto& group = final_members[c];
    if (group.empty()) continue;
    Complex sum{0.0, 0.0};
    for (Index j : group) sum += raw.eigenvalues(j);
    Complex value = sum / static_cast<double>(group.size());
    if (std::abs(value) <= cluster_tol) value = Complex(0.0, 0.0); // zero snap

    DistinctEigenvalue d;
    d.value = value;
    d.algebraic = static_cast<Index>(group.size());
    d.member_indices = group;

    Matrix shifted = a;
    shifted.diagonal().array() -= value;
    const RealVector sv = singular_values(shifted);
    const double cut = std::max(
        cluster_tol, defaults::rank_tol(a.rows()) * (sv.size() ? sv(0) : 0.0));
    d.geometric = kernel_dim_with_cut(sv, shifted.cols(), cut);

    if (d.geometric < 1 || d.geometric > d.algebraic)
      throw SpectralAmbiguityError(
          "cluster_eigenvalues: eigenvalue near " + std::to_string(value.real()) +
          (value.imag() < 0 ? "-" : "+") + std::to_string(std::abs(value.imag())) +
          "i has geometric multiplicity " + std::to_string(d.geometric) +
          " outside [1, " + std::to_string(d.algebraic) + "]");
    spectrum.distinct.push_back(std::move(d));
  }

  if (spectrum.total() != n)
    throw SpectralAmbiguityError("cluster_eigenvalues: multiplicities do not sum to N");
  return spectrum;
}

ZeroVerdict verify_numerical_zero(const Matrix& a, double alpha, double delta,
                                  int k_max) {
  require_finite(a, "verify_numerical_zero");
  if (a.rows() != a.cols())
    throw InputError("verify_numerical_zero: matrix must be square");
  if (!(alpha > delta && delta > 0.0))
    throw InputError("verify_numerical_zero: need alpha > delta > 0");

  const Index n = a.rows();
  ZeroVerdict verdict;
  verdict.alpha = alpha;
  verdict.delta = delta;

  const RealVector sv_a = singular_values(a);
  verdict.scale = sv_a.size() > 0 ? sv_a(0) : 0.0;
  Matrix b = a;
  if (verdict.scale > 0.0) b /= verdict.scale;

  Matrix power = Matrix::Identity(n, n);
  Index prev_m = -1;
  for (int k = 1; k <= k_max; ++k) {
    power = power * b;
    const RealVector sv = singular_values(power);
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cut = defaults::rank_tol(n) * smax;
    const Index m_k = kernel_dim_with_cut(sv, n, cut);

    ZeroVerdictRow row;
    row.k = k;
    row.kernel_dim = m_k;
    row.n_minus_mk = n - m_k;
    row.vacuous = (n - m_k) == 0;
    row.sigma_above = row.vacuous ? 0.0 : sv(n - m_k - 1);
    row.sigma_below = row.vacuous ? sv(0) : (n - m_k < n ? sv(n - m_k) : 0.0);
    verdict.rows.push_back(row);

    if (k == 1 && m_k == 0) {
      // no kernel at all: zero is not an eigenvalue
      verdict.is_numerical_zero = false;
      verdict.h_estimate = 0;
      return verdict;
    }

    const bool holds =
        row.vacuous ||
        (row.sigma_above > alpha && alpha > delta && delta > row.sigma_below);
    if (k == 1) verdict.is_numerical_zero = holds;

    if (k >= 2 && m_k == prev_m) {
      verdict.h_estimate = k - 1; // kernel stabilized
      return verdict;
    }
    if (!holds) {
      verdict.h_estimate = k - 1; // first failing power
      return verdict;
    }
    prev_m = m_k;
  }

  verdict.truncated = true;
  verdict.h_estimate = k_max;
  return verdict;
}

KernelProfile kernel_dim_profile(const Matrix& a, Complex lambda, int l_max,
                                 double tol) {
  require_finite(a, "kernel_dim_profile");
  if (a.rows() != a.cols())
    throw InputError("kernel_dim_profile: matrix must be square");
  if (l_max < 1) throw InputError("kernel_dim_profile: l_max must be >= 1");

  const Index n = a.rows();
  if (tol < 0.0) tol = defaults::rank_tol(n);
  Matrix shifted = a;
  shifted.diagonal().array() -= lambda;

  KernelProfile profile;
  profile.lambda = lambda;
  profile.dims.push_back(0); // Ker(I)

  Matrix power = Matrix::Identity(n, n);
  bool settled = false;
  for (int l = 1; l <= l_max && !settled; ++l) {
    power = power * shifted;
    const double norm = power.norm();
    if (norm > 0.0) power /= norm; // keep repeated powers in range
    const RealVector sv = singular_values(power);
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const Index dim = kernel_dim_with_cut(sv, n, tol * smax);
    profile.dims.push_back(dim);

    const std::size_t idx = profile.dims.size() - 1;
    const Index prev = profile.dims[idx - 1];
    if (l >= 2) profile.f.push_back(dim - prev);

    if (dim == prev) {
      profile.eigenvalue_index = l - 1;
      profile.eigenspace_dim = prev;
      settled = true;
    } else if ((profile.f.size() >= 2 &&
                profile.f.back() > profile.f[profile.f.size() - 2]) ||
               (profile.f.size() == 1 && profile.f[0] > profile.dims[1])) {
      // spectral radius above one: powers lose the small subspaces and the
      // chain-count differences start growing instead of vanishing
      profile.approximate = true;
      profile.eigenvalue_index = l - 1;
      profile.eigenspace_dim = prev;
      settled = true;
    }
  }

  if (!settled) {
    if (profile.dims.back() == n) {
      // kernel already fills the space: stabilized by necessity
      for (std::size_t l = 1; l < profile.dims.size(); ++l) {
        if (profile.dims[l] == n) {
          profile.eigenvalue_index = static_cast<Index>(l);
          break;
        }
      }
      profile.eigenspace_dim = n;
    } else {
      profile.approximate = true; // l_max too small to observe stabilization
      profile.eigenvalue_index = static_cast<Index>(profile.dims.size()) - 1;
      profile.eigenspace_dim = profile.dims.back();
    }
  }
  return profile;
}

}  // namespace gft
