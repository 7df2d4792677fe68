#pragma once

// Kicked Ising chains on L qubits: optimized few-body observables, the
// Δ^(1)/Δ^(2) deviation series between temporal and Haar moments, and
// system-size/body-count scaling sweeps. Temporal moments are held as
// Pauli-expectation accumulators, never as dense replicated matrices.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qerg/drives.hpp"
#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

enum class ChainDrive { Floquet, Cosine, Fibonacci };

std::string to_string(ChainDrive d);

struct ChainConfig {
  int L = 6;
  int K = 2;
  ChainDrive drive = ChainDrive::Floquet;
  std::int64_t T_opt = 1000;
  std::int64_t T_max = 1000000;
  double omega1 = 1.0;
  double omega2 = kPi * (3.0 - std::sqrt(5.0));
  std::uint64_t seed = 0;  // echoed in manifests; the dynamics is deterministic

  void validate() const;
};

// Ising Hamiltonians along orthogonal axes with a boundary field that breaks
// spatial reflection: H = Σ_j A_j + Σ_j A_{j-1}A_j + (1/10) A_1, A ∈ {X, Z}.
std::pair<Matrix, Matrix> ising_hamiltonians(int L);

// All Pauli strings of weight 1..K on L sites (identity excluded),
// deterministically ordered by weight, then site set, then letters.
std::vector<PauliString> kbody_basis(int L, int K);

// Sparse permutation+phase realization of a Pauli-string family, for O(2^L)
// expectation evaluation per string.
class PauliExpectationTable {
 public:
  PauliExpectationTable(int L, const std::vector<PauliString>& basis);
  int size() const { return static_cast<int>(perm_.size()); }
  // <psi|S|psi> for every basis string (real for Hermitian strings).
  Eigen::VectorXd expectations(const Vector& psi) const;
  // Dense reference for a single string (oracle path).
  double expectation_dense(const PauliString& s, const Vector& psi) const;

 private:
  int L_;
  std::vector<std::vector<std::int32_t>> perm_;
  std::vector<std::vector<Complex>> phase_;
};

// Temporal Pauli moments averaged over t in [0, T): order-1 averages <S> and,
// when enabled, order-2 averages <S1><S2>.
struct ChainMoments {
  std::int64_t T = 0;
  Eigen::VectorXd first;
  Eigen::MatrixXd second;  // empty unless second moments were accumulated
};

// Evolves |0...0> under the configured drive, snapshotting the accumulated
// moments at each checkpoint (checkpoints are sorted; T_opt is always
// included).
std::vector<ChainMoments> run_chain_moments(
    const ChainConfig& cfg, std::vector<std::int64_t> checkpoints,
    bool with_second);

struct ObservableCoefficients {
  int order = 1;
  Eigen::VectorXd j1;   // order 1
  Eigen::MatrixXd j2;   // order 2
  double normalization = 0.0;  // M with unit thermal fluctuations
  bool degenerate = false;
};

// Coefficients maximizing the temporal-vs-Haar difference at the supplied
// moments: J_S = <S>_T - tr(S)/d and J_{S1,S2} = <S1 S2>_T - δ_{S1S2}/(d+1),
// normalized so (tr O² - (tr O)²)/d^order = 1.
ObservableCoefficients optimize_observable(const ChainMoments& moments,
                                           int order, int L);

// Δ(T) for a frozen observable against moments accumulated to time T.
double delta_value(const ObservableCoefficients& obs,
                   const ChainMoments& moments, int L);

struct DeltaPoint {
  std::int64_t T = 0;
  double delta = 0.0;
  bool pre_optimization = false;  // checkpoint below T_opt
};

struct DeltaSeries {
  ChainConfig cfg;
  int order = 1;
  double optimized_value = 0.0;  // Δ(T_opt) = M
  std::vector<DeltaPoint> points;
};

// Full pipeline: accumulate to max(checkpoints), freeze the observable at
// T_opt, evaluate Δ at every checkpoint.
DeltaSeries delta_series(const ChainConfig& cfg, int order,
                         const std::vector<std::int64_t>& checkpoints);

// Both orders from a single evolution pass.
std::pair<DeltaSeries, DeltaSeries> delta_series_both_orders(
    const ChainConfig& cfg, const std::vector<std::int64_t>& checkpoints);

struct SweepRow {
  ChainDrive drive;
  int L = 0, K = 0, order = 1;
  std::int64_t T = 0;
  double delta = 0.0;  // late-time plateau value
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// Late-time plateau per (L, K, drive) plus log-linear fits of
// log10|Δ(T_max)| against L (per drive/K/order).
struct ScalingSweep {
  std::vector<SweepRow> rows;
  std::vector<std::pair<std::string, LinearFit>> fits;  // keyed "drive,K,order"
};

ScalingSweep scaling_sweep(const std::vector<int>& orders,
                           const std::vector<int>& l_range,
                           const std::vector<int>& k_range,
                           const std::vector<ChainDrive>& drives,
                           std::int64_t T_opt, std::int64_t T_max);

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Dense-replica reference moments for small L (oracle for the Pauli path):
// builds ρ_T^(1) and ρ_T^(2) explicitly and evaluates tr(S ρ), tr(S1⊗S2 ρ).
ChainMoments dense_reference_moments(const ChainConfig& cfg, std::int64_t T,
                                     const std::vector<PauliString>& basis);

// CSV rows (drive, L, K, order, T, delta).
void write_delta_csv(const std::string& path,
                     const std::vector<DeltaSeries>& series);

}  // namespace qerg
