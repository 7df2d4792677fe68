#pragma once

// Euler-angle parametrization of SU(d), the measure-preserving angle
// substitution, and the (d²-2)-tone drive built from it whose evolution
// operator sweeps SU(d) uniformly in time.

#include <vector>

#include "qerg/drives.hpp"
#include "qerg/haar.hpp"
#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

// Angle table for SU(d): ξ_{r,j} ∈ [0, π/2], φ_{r,j} ∈ [0, 2π) for
// 1 <= r <= j <= d-1, and η_j ∈ [0, 2π); d²-1 angles in total.
struct EulerAngles {
  int d = 0;
  // Indexed by (r, j) with 1-based r <= j; storage is triangular row-major.
  std::vector<double> xi;
  std::vector<double> phi;
  std::vector<double> eta;  // η_1 .. η_{d-1}

  static EulerAngles zeros(int d);
  double& xi_at(int r, int j);
  double& phi_at(int r, int j);
  double xi_at(int r, int j) const;
  double phi_at(int r, int j) const;
  static int angle_count(int d) { return d * d - 1; }
};

// Two-level rotation: identity except the 2x2 block at rows/cols (j, j+1),
//   [[cos ξ e^{iη}, -sin ξ e^{iφ}], [sin ξ e^{-iφ}, cos ξ e^{-iη}]].
Matrix rotation_matrix(int j, double xi, double phi, double eta, int d);

// Special unitary from the angle table,
//   V = E_{d-1} ··· E_2 E_1,  E_j = R_1(ξ_{1,j},φ_{1,j},0) ··· R_j(ξ_{j,j},φ_{j,j},η_j):
// each block E_j appends a uniformly distributed column-sphere factor, so
// uniform angles with the measure-preserving ξ substitution below push
// forward to the Haar measure on SU(d).
Matrix hurwitz_unitary(const EulerAngles& angles);

// ξ(θ) = arcsin(|1 - θ/π|^{1/2r}); pushes uniform θ to the density
// proportional to d[(sin ξ)^{2r}].
double measure_preserving_xi(double theta, int r);

// Samples a uniform angle table with the measure-preserving substitution.
EulerAngles sample_angles(int d, Rng& rng);

struct PushforwardReport {
  int d = 0;
  std::int64_t samples = 0;
  double first_moment_deviation = 0.0;  // max-entry vs the closed form
  double first_moment_stderr = 0.0;
  double frame_potential_k2 = 0.0;      // vs k! = 2
  double frame_potential_k2_stderr = 0.0;
};

// Maps angle samples through hurwitz_unitary and compares the empirical
// channel moments against the Haar values.
PushforwardReport haar_pushforward_check(int d, std::int64_t n_samples,
                                         Rng& rng, int workers = 1);

// (m = d²-2)-tone drive with quasienergies by construction:
//   U(t) = V(ωt, q₁t) e^{-i diag(0,0,q₂,…,q_{d-1}) t} V(0)†.
// The quasienergy q₁ rides on the (η₁, φ₁₁) angle pair of the rightmost
// rotation block and extracts as a diagonal phase, so U(t) = P(ωt) e^{-iQt} R
// with Q = diag(-q₁, q₁, q₂, …, q_{d-1}) and R = V(0)†.
DriveSpec cue_drive(int d, const std::vector<double>& omegas,
                    const std::vector<double>& quasienergies);

// Default frequency family: 2π · frac(sqrt(prime)), nominally rationally
// independent in floating point. Returns d²-2 frequencies then d-1
// quasienergies.
std::pair<std::vector<double>, std::vector<double>> cue_default_frequencies(
    int d);

}  // namespace qerg
