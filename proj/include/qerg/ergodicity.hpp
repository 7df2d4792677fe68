#pragma once

// Temporal-ensemble accumulation and ergodicity diagnostics: deviations of
// temporal moments from the Haar moments, frame potentials over time, ε-net
// coverage, the quantum-speed-limit audit, PU(d) distance, and the
// obstruction bounds B₁/B₂ with the packing count.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qerg/drives.hpp"
#include "qerg/haar.hpp"
#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

enum class MomentKind { State, Unitary };

// Running mean of ψ(t)^{⊗k} (state) or (U*(t) ⊗ U(t))^{⊗k} (unitary).
// Accumulators over disjoint sample sets merge exactly.
class MomentAccumulator {
 public:
  MomentAccumulator(MomentKind kind, int d, int k,
                    std::int64_t cap = kDefaultEntryCap);

  void add_state(const Vector& psi);
  void add_unitary(const Matrix& u);
  void merge(const MomentAccumulator& other);

  Matrix mean() const;
  std::int64_t count() const { return count_; }
  MomentKind kind() const { return kind_; }
  int dim() const { return d_; }
  int order() const { return k_; }

 private:
  MomentKind kind_;
  int d_, k_;
  std::int64_t count_ = 0;
  Matrix sum_;
};

MomentAccumulator accumulate_state_moment(const EvolutionTrace& trace, int k,
                                          std::int64_t cap = kDefaultEntryCap);
MomentAccumulator accumulate_unitary_moment(const EvolutionTrace& trace, int k,
                                            std::int64_t cap = kDefaultEntryCap);

// Streaming accumulation straight from a drive at integer times 0..T-1,
// without materializing the trace.
MomentAccumulator accumulate_state_moment(const DriveSpec& spec,
                                          std::int64_t T, int k,
                                          const Vector& psi0,
                                          std::int64_t cap = kDefaultEntryCap);
MomentAccumulator accumulate_unitary_moment(const DriveSpec& spec,
                                            std::int64_t T, int k,
                                            std::int64_t cap = kDefaultEntryCap);

// Trace distance between the accumulated state moment and ρ_Haar^(k).
double khse_deviation(const MomentAccumulator& acc);

// Frobenius distance between the accumulated unitary moment and a reference
// (the closed-form first moment when k = 1, else a supplied reference, e.g.
// a Monte-Carlo Haar moment).
double unitary_deviation(const MomentAccumulator& acc,
                         const std::optional<Matrix>& reference = std::nullopt);

struct FramePotentialEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t pairs = 0;
};

// Double time average of |⟨ψ(t')|ψ(t)⟩|^{2k} (state) or |tr U†(t')U(t)|^{2k}
// (unitary), estimated over uniformly sampled pairs up to pair_budget.
FramePotentialEstimate frame_potential_time(const EvolutionTrace& trace, int k,
                                            MomentKind kind,
                                            std::int64_t pair_budget, Rng& rng);

// Same estimator on a bare state list.
FramePotentialEstimate state_frame_potential(const std::vector<Vector>& states,
                                             int k, std::int64_t pair_budget,
                                             Rng& rng);

// Covering-radius estimate: max over Haar probe states of the min trace
// distance to the list. Probe sampling underestimates the exact radius.
double epsilon_net_radius(const std::vector<Vector>& states,
                          std::int64_t probe_count, Rng& rng);

// γ(k, d) = sqrt(1 - F_state(d,k)^{1/k}); a state k-design is a γ-net.
double gamma_bound(int d, int k);

struct SpeedLimitReport {
  double path_length = 0.0;   // Σ_j D(ψ(t_{j-1}), ψ(t_j))
  double action_bound = 0.0;  // Σ_j ||H_j||_∞
  double slack() const { return action_bound - path_length; }
  bool holds(double tol = 1e-9) const {
    return path_length <= action_bound + tol;
  }
};

// Verifies the kicked-dynamics speed limit: the trace-distance path length is
// bounded by the summed kick action ||log gate||_∞ per step.
SpeedLimitReport speed_limit_audit(const EvolutionTrace& trace,
                                   const std::vector<Matrix>& kick_generators);

struct BoundsReport {
  int d = 0, k = 0;
  double gamma = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  // Packing count: at least ceil(eps^{-2(d-1)}) disjoint balls of radius
  // eps/2 fit in the projective space.
  std::int64_t packing_n(double eps) const;
};

// Lower bounds on the kick action B required for k-th order ergodicity in a
// time-periodic drive: B₁ = (sqrt(2)/3k)(binom(k+d-1,k)-1) and B₂ = Cγ^{3-2d}
// with C = 2^{5-4d}(d-1)^{2-2d}(2d-3)^{2d-3}.
BoundsReport b_bounds(int d, int k);

// Projective-unitary distance sqrt(1 - |tr(U†V)|²/d²); zero iff equal up to
// global phase.
double pu_distance(const Matrix& u, const Matrix& v);

struct ConvergencePoint {
  std::int64_t T = 0;
  double deviation = 0.0;
  double frame_potential = 0.0;
  double frame_potential_stderr = 0.0;
};

// Writes columns (T, deviation, frame_potential, frame_potential_stderr).
void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergencePoint>& series);

// Deviation-vs-T series for a drive's state moment at the given checkpoints,
// including a subsampled frame potential per checkpoint.
std::vector<ConvergencePoint> state_convergence_series(
    const DriveSpec& spec, const std::vector<std::int64_t>& checkpoints, int k,
    const Vector& psi0, std::int64_t pair_budget, Rng& rng);

// Least-squares slope of log10(deviation) against log10(T).
double loglog_slope(const std::vector<ConvergencePoint>& series);

}  // namespace qerg
