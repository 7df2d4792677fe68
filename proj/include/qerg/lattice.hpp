#pragma once

// Frequency-lattice representation of quasienergy eigenstates: finite Fourier
// component sets, orthonormality and k-th-moment constraint verification,
// the built-in exact solutions, reconstruction of the torus eigenstates, and
// drive synthesis from a verified lattice.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qerg/drives.hpp"
#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

struct LatticeComponent {
  int alpha = 0;
  std::vector<int> n;  // lattice site in Z^m
  Vector vec;          // component vector in C^d
};

struct ErgodicLattice {
  int d = 0;
  int m = 0;
  std::vector<LatticeComponent> components;
  bool verified = false;

  // Component at (alpha, n); zero vector when absent.
  Vector component(int alpha, const std::vector<int>& n) const;
};

struct OrthonormalityReport {
  double max_violation = 0.0;
  bool pass = false;
  double tol = 0.0;
};

// Orthonormality in frequency space: for all α, α' and every offset n',
// Σ_n ⟨α_n | α'_{n'+n}⟩ = δ_{αα'} δ_{n'0}. Passing marks the lattice verified.
OrthonormalityReport verify_orthonormality(ErgodicLattice& lat, double tol);

struct KhseConstraintReport {
  int k = 0;
  double max_deviation = 0.0;  // max-entry deviation over all α tuples
  bool pass = false;
  double tol = 0.0;
  std::int64_t terms_enumerated = 0;
};

// k-th-moment constraints: for every α tuple the symmetrized resonance sum
//   P_α Π_sym Σ_{Σn_j = Σn'_j} ⊗_j |α_{j,n_j}⟩⟨α_{j,n'_j}| Π_sym
// must equal ρ_Haar^(k). The resonance sum is grouped by total lattice
// momentum, so enumeration is s^k rather than s^{2k}.
KhseConstraintReport verify_khse_constraints(const ErgodicLattice& lat, int k,
                                             double tol,
                                             std::int64_t term_cap = 100000000);

// Built-in exact solutions.
ErgodicLattice el_11(int d);      // one tone, first moment, any dimension
ErgodicLattice el_12_qubit();     // one tone, second moment, qubit
ErgodicLattice el_23_qubit();     // two tones, third moment, qubit

struct ReconstructedFrame {
  std::vector<Vector> states;  // |α(θ)⟩ = Σ_n e^{-i n·θ} |α_n⟩ per α
  bool verified = false;       // carries the lattice's verification flag
};

ReconstructedFrame reconstruct_qe(const ErgodicLattice& lat,
                                  const RealVector& theta);

// Drive with P(θ) = Σ_α |α(θ)⟩⟨α| and quasienergies (0, q_1, …, q_{d-1});
// U(0) = 1 via the right factor P(0)†.
DriveSpec lattice_to_drive(const ErgodicLattice& lat,
                           const std::vector<double>& omegas,
                           const std::vector<double>& quasienergies);

struct TorusQuadrature {
  int points_per_tone = 512;  // uniform midpoint product grid
};

struct RhoSymResult {
  Matrix rho;            // P_α Π_sym E_θ[⊗_j α_j(θ)] Π_sym
  double trace = 0.0;
  double doubling_shift = -1.0;  // max-entry move when the grid is doubled
  bool under_resolved = false;
};

// Symmetrized torus average of a quasienergy-eigenstate tuple. When
// check_resolution is set, the grid is doubled once and the result is
// flagged under-resolved if it moves by more than resolution_tol.
RhoSymResult rho_sym_alpha(const FloquetDecomposition& dec,
                           const std::vector<int>& alphas,
                           const TorusQuadrature& quad,
                           bool check_resolution = false,
                           double resolution_tol = 1e-6);

struct TheoremCheckReport {
  int k = 0;
  double max_trace_distance = 0.0;
  bool pass = false;
  double tol = 0.0;
};

// k-th-order ergodicity criterion for a decomposition with quasienergy
// eigenstates: every α tuple's symmetrized torus average must equal
// ρ_Haar^(k) (tuples checked up to permutation equivalence).
TheoremCheckReport check_theorem_g2(const FloquetDecomposition& dec, int k,
                                    const TorusQuadrature& quad, double tol);

// JSON lattice files: {d, m, components: [{alpha, n, vec}]}.
nlohmann::json lattice_to_json(const ErgodicLattice& lat);
ErgodicLattice lattice_from_json(const nlohmann::json& j);

}  // namespace qerg
