#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>

namespace gft {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error categories; the CLI maps these onto exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectralAmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace defaults {

inline constexpr double cluster_tol = 1e-6;
inline constexpr double alpha = 1e-8;
inline constexpr double delta = 1e-13;
inline constexpr double proj_tol = 1e-10;
inline constexpr double dual_tol = 1e-10;
inline constexpr double basis_tol = 1e-8;
inline constexpr double tv_tol = 1e-10;
inline constexpr int retry_budget = 10;

// Relative singular-value threshold used for numerical rank decisions.
inline double rank_tol(Index n) {
  return static_cast<double>(n) * std::numeric_limits<double>::epsilon();
}

}  // namespace defaults

}  // namespace gft
