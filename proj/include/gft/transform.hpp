#pragma once

#include "gft/basis.hpp"
#include "gft/jordan.hpp"
#include "gft/spectral.hpp"
#include "gft/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gft {

struct AimComponent {
  Complex lambda{0.0, 0.0};
  Vector projection;     // \breve s_i, length N
  Complex energy{0.0, 0.0};
  Vector alpha;          // component slice of V^{-1} s
  Vector beta;           // component slice of V^H s
};

// Signal decomposition over generalized eigenspaces: s = sum_i projection_i.
// Energies use <a, b> = b^H a so that they sum to ||s||^2 exactly.
struct AimSpectrum {
  std::vector<AimComponent> components;
  double residual = 0.0;     // || s - sum_i projection_i ||_2
  double tol_effective = defaults::proj_tol;
  bool tol_scaled = false;   // tolerance widened because cond(V) > 1e8
};

struct DualPair {
  Matrix v;
  Matrix w;        // V^{-H}
  Vector coeffs_v; // V^{-1} s
  Vector coeffs_w; // W^{-1} s = V^H s
};

struct JordanProjection {
  Complex lambda{0.0, 0.0};
  Index chain_index = 0; // within the eigenvalue's component
  Vector projection;
};

struct EnergyRanking {
  std::vector<Index> order;    // components by descending real-part energy
  std::vector<Index> selected; // minimal prefix reaching the threshold
  bool has_negative = false;   // oblique case: some real parts < 0
};

// Completes a full-rank known-column set to a basis with the orthonormal
// kernel of V_known^H, assigning the new columns to the unique deficient
// component. known_counts gives the number of V_known columns belonging to
// each spectrum component, in order.
Basis complete_basis(const Matrix& v_known, const Spectrum& spectrum,
                     std::span<const Index> known_counts,
                     double rank_tol = -1.0);

// First component matrix Z_i0 = V diag(0,..,I_{a_i},..,0) V^{-1}; the
// oblique projector onto generalized eigenspace i. Materializes an N x N
// matrix; aim_transform avoids this.
Matrix component_projector(const Basis& basis, Index i);

AimSpectrum aim_transform(const Basis& basis, const Vector& s);

// \tilde s = V^{-1} s.
Vector exact_gft(const Basis& basis, const Vector& s);

// Projections onto individual Jordan subspaces; requires full chain
// bookkeeping and refuses bases containing completion columns.
std::vector<JordanProjection> jordan_gft(const Basis& basis,
                                         const std::vector<ChainSet>& chains,
                                         const Vector& s);

DualPair dual_basis(const Matrix& v, const Vector& s);

Complex component_energy(const Basis& basis, const Vector& s, Index i);

EnergyRanking energy_ranking(std::span<const Complex> energies,
                             double threshold);

// True iff the clustered spectra agree (values and both multiplicities)
// and every pair of generalized eigenspaces coincides up to principal
// angles <= tol.
bool check_g_equivalence(const Matrix& a, const Matrix& b, double tol);

}  // namespace gft
