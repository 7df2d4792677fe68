#pragma once

// Closed-form Haar moments and frame potentials for states and unitaries,
// plus the Monte-Carlo oracles used to validate them.

#include <cstdint>
#include <optional>

#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

// k-th Haar moment of pure states on C^d:
//   ρ_Haar^(k) = Π_sym^(k) · (d-1)! k! / (d+k-1)!
// Hermitian, PSD, unit trace, supported on the symmetric subspace.
Matrix haar_state_moment(int d, int k, std::int64_t cap = kDefaultEntryCap);

// State frame potential (d-1)! k! / (d+k-1)! = 1/binom(d+k-1,k),
// evaluated in log space to avoid overflow.
double haar_state_frame_potential(int d, int k);

// Unitary frame potential E|tr V|^{2k}: k! for k <= d; for k > d the number
// of permutations of {1..k} whose longest increasing subsequence is <= d
// (exact enumeration, k <= 10). Throws SizeCapError past the enumeration cap;
// see haar_unitary_frame_potential_estimate for the sampling fallback.
double haar_unitary_frame_potential(int d, int k);

// First moment of the vectorized unitary channel, E[(V* ⊗ V)] = |Ω⟩⟨Ω| with
// |Ω⟩ the normalized maximally entangled vector. Equals the reshuffle of
// SWAP/d and vectorizes the channel O -> tr(O) 1/d.
Matrix haar_unitary_first_moment(int d);

struct McMoment {
  Matrix mean;
  double max_stderr = 0.0;  // largest per-entry standard error
  std::int64_t samples = 0;
};

// Empirical mean of (V* ⊗ V)^{⊗k} over Haar samples. k=0 returns the 1x1 [1].
McMoment haar_unitary_moment_mc(int d, int k, std::int64_t n_samples, Rng& rng,
                                int workers = 1,
                                std::int64_t cap = kDefaultEntryCap);

// Empirical mean of φ^{⊗k} over Haar states.
McMoment haar_state_moment_mc(int d, int k, std::int64_t n_samples, Rng& rng,
                              int workers = 1,
                              std::int64_t cap = kDefaultEntryCap);

struct McScalar {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t terms = 0;
};

// Monte-Carlo unitary frame potential from disjoint Haar pairs,
// E|tr(U† V)|^{2k}, with an honest standard error.
McScalar haar_unitary_frame_potential_mc(int d, int k, std::int64_t n_pairs,
                                         Rng& rng, int workers = 1);

// Exact value (stderr 0) when the combinatorial branch applies; past the
// k <= 10 enumeration cap, falls back to the Monte-Carlo estimate with its
// reported standard error.
McScalar haar_unitary_frame_potential_estimate(int d, int k,
                                               std::int64_t n_pairs, Rng& rng,
                                               int workers = 1);

// First Heisenberg-picture twirl C^(1)[O] = tr(O) 1/d.
Matrix heisenberg_first_twirl(const Matrix& o);

// Squared Frobenius norm of a channel-moment mean; equals the frame
// potential when the mean is exact.
double frame_potential_from_moment(const Matrix& mean);

}  // namespace qerg
