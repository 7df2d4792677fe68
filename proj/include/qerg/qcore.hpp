#pragma once

// Dense complex linear-algebra primitives shared by every module:
// Kronecker products, replica permutation operators, the symmetric-subspace
// projector, trace distance, Haar sampling, the principal matrix logarithm
// of a unitary, and Pauli strings.

#include <cstdint>
#include <string>
#include <vector>

#include "qerg/types.hpp"

namespace qerg {

// Max-norm tolerances used when classifying matrices.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-8;

bool is_unitary(const Matrix& u, double tol = kUnitaryTol);
bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

// Kronecker product; dimensions multiply. Throws SizeCapError when the
// result would exceed `cap` entries.
Matrix kron(const Matrix& a, const Matrix& b,
            std::int64_t cap = kDefaultEntryCap);
Vector kron(const Vector& a, const Vector& b,
            std::int64_t cap = kDefaultEntryCap);

// k-fold replica of a vector or matrix: x^{⊗k}.
Vector kron_power(const Vector& v, int k, std::int64_t cap = kDefaultEntryCap);
Matrix kron_power(const Matrix& m, int k, std::int64_t cap = kDefaultEntryCap);

// Permutation operator V_pi on (C^d)^{⊗k}: factor j of the input is carried
// to slot pi(j), with pi a 0-based image table of size k. Composition follows
// V_pi V_sigma = V_{pi ∘ sigma}.
Matrix permutation_operator(const std::vector<int>& pi, int d,
                            std::int64_t cap = kDefaultEntryCap);

// Orthogonal projector onto the symmetric subspace of (C^d)^{⊗k}:
// (1/k!) Σ_pi V_pi. Enumeration capped at k <= 10.
Matrix symmetric_projector(int d, int k, std::int64_t cap = kDefaultEntryCap);

// Dimension of the symmetric subspace, binom(d+k-1, k).
std::int64_t symmetric_dimension(int d, int k);

// Trace distance (1/2)Σ|λ_i(ρ-σ)| via Hermitian eigendecomposition.
// Inputs must be Hermitian to kHermitianTol.
double trace_distance(const Matrix& rho, const Matrix& sigma);

// Trace distance between pure states, sqrt(1-|⟨ψ|φ⟩|²).
double trace_distance(const Vector& psi, const Vector& phi);

// Haar-uniform d x d unitary: complex Ginibre followed by QR with the
// R-diagonal phase fixed to be real positive.
Matrix haar_random_unitary(int d, Rng& rng);

// Haar-uniform pure state on C^d.
Vector haar_random_state(int d, Rng& rng);

// Hermitian H with e^{-iH} = u and eigenphases in (-π, π]; an eigenphase
// exactly on the branch cut resolves to +π. ‖H‖_∞ <= π.
Matrix matrix_log_principal(const Matrix& u);

// Operator norm (largest singular value; largest |eigenvalue| when Hermitian).
double operator_norm(const Matrix& a);

// e^{-iHt} for Hermitian H, via eigendecomposition.
Matrix exp_minus_i_hermitian(const Matrix& h, double t = 1.0);

struct PauliString {
  int length = 0;
  std::string letters;  // per site, from {I, X, Y, Z}

  int weight() const;
  bool operator==(const PauliString&) const = default;
};

// Dense 2^L x 2^L realization of a Pauli string.
Matrix pauli_matrix(const PauliString& s, std::int64_t cap = kDefaultEntryCap);

// The four single-qubit Pauli matrices.
Matrix pauli_1q(char letter);

}  // namespace qerg
