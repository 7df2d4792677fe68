#pragma once

// Drive families unified behind DriveSpec: kick sequences (a unitary gate per
// integer step) and analytic generalized Floquet decompositions
// U(t) = P(ωt) e^{-iQt} R, evaluated in closed form.

#include <cmath>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg {

struct KickSequence {
  int dim = 0;
  // Gate applied at integer step n >= 1.
  std::function<Matrix(std::int64_t)> gate_rule;
};

struct FloquetDecomposition {
  int dim = 0;
  int tones = 0;                 // m
  RealVector omega;              // frequency vector, size m
  RealVector quasienergies;      // diagonal of Q, size d
  // Parent unitary P(θ) on the m-torus; U(t) = P(ωt mod 2π) e^{-iQt} R.
  std::function<Matrix(const RealVector&)> parent_unitary;
  // Right factor making U(0) = 1 when P(0) != 1.
  Matrix right_factor;

  Matrix unitary_at(double t) const;
};

struct DriveSpec {
  std::variant<KickSequence, FloquetDecomposition> drive;
  // Constructor family and parameters, for serialization and manifests.
  nlohmann::json descriptor;

  int dim() const;
  bool is_kick() const { return std::holds_alternative<KickSequence>(drive); }
  const KickSequence& kick() const { return std::get<KickSequence>(drive); }
  const FloquetDecomposition& floquet() const {
    return std::get<FloquetDecomposition>(drive);
  }
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<Matrix> unitaries;
  std::optional<std::vector<Vector>> states;

  int dim() const {
    return unitaries.empty() ? 0 : static_cast<int>(unitaries[0].rows());
  }
};

// Streams (index, t, U(t), ψ(t)) over the given sample times without storing
// them. Kick sequences require the times to be non-negative integers; all
// times must be non-decreasing.
void scan_evolution(
    const DriveSpec& spec, const std::vector<double>& times,
    const std::optional<Vector>& psi0,
    const std::function<void(std::int64_t, double, const Matrix&,
                             const Vector*)>& fn);

EvolutionTrace evolve(const DriveSpec& spec, const std::vector<double>& times,
                      const std::optional<Vector>& psi0 = std::nullopt);

// Integer sample times 0..T-1.
std::vector<double> integer_times(std::int64_t T);

// Kick with h0 at even integer steps and h1 at odd ones.
DriveSpec floquet_kick_drive(const Matrix& h0, const Matrix& h1);

// Kicks with the interpolated Hamiltonian H_x = (1-x) h0 + x h1,
// x = (1 + cos(ω₂ t_n))/2 at kick times t_n = n/ω₁.
DriveSpec cosine_drive(const Matrix& h0, const Matrix& h1, double omega1 = 1.0,
                       double omega2 = kPi * (3.0 - std::sqrt(5.0)));
double cosine_envelope(double omega1, double omega2, std::int64_t n);

// Kicks with h0 or h1 chosen by the circle-rotation coding
// χ(ω₂ t_n mod 2π) with χ = 1 on [2π-ω₂, 2π).
DriveSpec fibonacci_drive(const Matrix& h0, const Matrix& h1,
                          double omega1 = 1.0,
                          double omega2 = kPi * (3.0 - std::sqrt(5.0)));
bool fibonacci_selector(double omega1, double omega2, std::int64_t n);

// Two-tone single-qubit drive whose quasienergy eigenstates sweep the Bloch
// sphere uniformly: P from the Euler-angle form with ξ = arccos sqrt(p),
// p(θ₁) = |1 - θ₁/π|, and Q = diag(-q, q).
DriveSpec qubit_cue_drive(double omega1, double omega2, double q);

// Equidistribution-friendly default frequencies (ω₁, ω₂, q) for the qubit
// drive, built from the plastic-number pair (1/ρ, 1/ρ²).
struct QubitCuePreset {
  double omega1, omega2, q;
};
QubitCuePreset qubit_cue_default_preset();

// Periodic gate sequence cycling the evolution operator through the given
// unitary list (gates[0] must be the identity): at step j the applied gate is
// V_{j mod n} V_{j-1 mod n}^†, so U(j) = V_{j mod n}.
DriveSpec design_cycle_drive(const std::vector<Matrix>& gates);

// Total kick action Σ_j ||log(V_j V_{j-1}^†)||_∞ over one period.
double design_cycle_action(const std::vector<Matrix>& gates);

// Single-qubit periodic drive whose quasienergy eigenstate traverses, at
// constant speed, the closed Eulerian circuit over all twelve octahedron
// edges of the Bloch sphere (π/2 great-circle arcs through the six states
// |0⟩,|1⟩,|±⟩,|±i⟩). The temporal average of the eigenstate reproduces the
// Haar moments up to k = 3.
DriveSpec great_circle_3design_drive(double omega, double q);

// The six octahedron corner states.
std::vector<Vector> octahedron_states();

// Bloch-sphere position of the great-circle loop at loop parameter θ.
Eigen::Vector3d great_circle_loop_point(double theta);

// --- JSON serialization -----------------------------------------------------
// Serializes the constructor family and parameters; reconstruction lives in
// drive_from_json (drive_json.cpp) so analytic families from other modules can
// participate.
nlohmann::json drive_to_json(const DriveSpec& spec);
DriveSpec drive_from_json(const nlohmann::json& j);

}  // namespace qerg
