#include "qerg/drives.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "qerg/json_util.hpp"

namespace qerg {

namespace {

double mod_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

RealVector wind(const RealVector& omega, double t) {
  RealVector theta(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    theta(i) = mod_2pi(omega(i) * t);
  return theta;
}

}  // namespace

Matrix FloquetDecomposition::unitary_at(double t) const {
  Matrix p = parent_unitary(wind(omega, t));
  Vector phases(dim);
  for (int a = 0; a < dim; ++a)
    phases(a) = std::exp(Complex(0.0, -quasienergies(a) * t));
  return p * phases.asDiagonal() * right_factor;
}

int DriveSpec::dim() const {
  return is_kick() ? kick().dim : floquet().dim;
}

void scan_evolution(
    const DriveSpec& spec, const std::vector<double>& times,
    const std::optional<Vector>& psi0,
    const std::function<void(std::int64_t, double, const Matrix&,
                             const Vector*)>& fn) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw ArgumentError("sample times must be non-decreasing");
  if (times.empty()) return;
  if (!times.empty() && times.front() < 0)
    throw ArgumentError("sample times must be non-negative");

  const int d = spec.dim();
  if (psi0 && psi0->size() != d)
    throw ArgumentError("initial state dimension mismatch");

  if (spec.is_kick()) {
    const auto& ks = spec.kick();
    for (double t : times) {
      if (std::abs(t - std::round(t)) > 1e-9)
        throw ArgumentError("kick drives sample at integer times only");
    }
    Matrix u = Matrix::Identity(d, d);
    std::int64_t step = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const std::int64_t target = static_cast<std::int64_t>(std::llround(times[i]));
      while (step < target) {
        ++step;
        u = ks.gate_rule(step) * u;
      }
      Vector psi;
      if (psi0) psi = u * (*psi0);
      fn(static_cast<std::int64_t>(i), times[i], u, psi0 ? &psi : nullptr);
    }
  } else {
    const auto& fd = spec.floquet();
    for (std::size_t i = 0; i < times.size(); ++i) {
      Matrix u = fd.unitary_at(times[i]);
      Vector psi;
      if (psi0) psi = u * (*psi0);
      fn(static_cast<std::int64_t>(i), times[i], u, psi0 ? &psi : nullptr);
    }
  }
}

EvolutionTrace evolve(const DriveSpec& spec, const std::vector<double>& times,
                      const std::optional<Vector>& psi0) {
  EvolutionTrace trace;
  trace.times = times;
  trace.unitaries.reserve(times.size());
  if (psi0) trace.states.emplace();
  scan_evolution(spec, times, psi0,
                 [&](std::int64_t, double, const Matrix& u, const Vector* psi) {
                   trace.unitaries.push_back(u);
                   if (psi) trace.states->push_back(*psi);
                 });
  return trace;
}

std::vector<double> integer_times(std::int64_t T) {
  std::vector<double> t(T);
  for (std::int64_t i = 0; i < T; ++i) t[i] = static_cast<double>(i);
  return t;
}

namespace {

void require_hermitian_pair(const Matrix& h0, const Matrix& h1) {
  if (!is_hermitian(h0) || !is_hermitian(h1))
    throw ArgumentError("kick Hamiltonians must be Hermitian");
  if (h0.rows() != h1.rows())
    throw ArgumentError("kick Hamiltonians must share a dimension");
}

}  // namespace

DriveSpec floquet_kick_drive(const Matrix& h0, const Matrix& h1) {
  require_hermitian_pair(h0, h1);
  const int d = static_cast<int>(h0.rows());
  auto g0 = std::make_shared<Matrix>(exp_minus_i_hermitian(h0));
  auto g1 = std::make_shared<Matrix>(exp_minus_i_hermitian(h1));
  DriveSpec spec;
  spec.drive = KickSequence{
      d, [g0, g1](std::int64_t n) { return n % 2 == 0 ? *g0 : *g1; }};
  spec.descriptor = {{"family", "floquet-kick"},
                     {"h0", matrix_to_json(h0)},
                     {"h1", matrix_to_json(h1)}};
  return spec;
}

double cosine_envelope(double omega1, double omega2, std::int64_t n) {
  const double t_n = static_cast<double>(n) / omega1;
  return (1.0 + std::cos(mod_2pi(omega2 * t_n))) / 2.0;
}

DriveSpec cosine_drive(const Matrix& h0, const Matrix& h1, double omega1,
                       double omega2) {
  require_hermitian_pair(h0, h1);
  if (omega1 == 0.0) throw ArgumentError("omega1 must be nonzero");
  const int d = static_cast<int>(h0.rows());
  auto h0p = std::make_shared<Matrix>(h0);
  auto h1p = std::make_shared<Matrix>(h1);
  DriveSpec spec;
  spec.drive = KickSequence{d, [h0p, h1p, omega1, omega2](std::int64_t n) {
                              const double x = cosine_envelope(omega1, omega2, n);
                              Matrix hx = (1.0 - x) * (*h0p) + x * (*h1p);
                              return exp_minus_i_hermitian(hx);
                            }};
  spec.descriptor = {{"family", "cosine"},
                     {"omega1", omega1},
                     {"omega2", omega2},
                     {"h0", matrix_to_json(h0)},
                     {"h1", matrix_to_json(h1)}};
  return spec;
}

bool fibonacci_selector(double omega1, double omega2, std::int64_t n) {
  const double t_n = static_cast<double>(n) / omega1;
  return mod_2pi(omega2 * t_n) >= kTwoPi - omega2;
}

DriveSpec fibonacci_drive(const Matrix& h0, const Matrix& h1, double omega1,
                          double omega2) {
  require_hermitian_pair(h0, h1);
  if (!(omega2 > 0.0 && omega2 < kTwoPi))
    throw ArgumentError("fibonacci drive requires 0 < omega2 < 2*pi");
  const int d = static_cast<int>(h0.rows());
  auto g0 = std::make_shared<Matrix>(exp_minus_i_hermitian(h0));
  auto g1 = std::make_shared<Matrix>(exp_minus_i_hermitian(h1));
  DriveSpec spec;
  spec.drive =
      KickSequence{d, [g0, g1, omega1, omega2](std::int64_t n) {
                     return fibonacci_selector(omega1, omega2, n) ? *g1 : *g0;
                   }};
  spec.descriptor = {{"family", "fibonacci"},
                     {"omega1", omega1},
                     {"omega2", omega2},
                     {"h0", matrix_to_json(h0)},
                     {"h1", matrix_to_json(h1)}};
  return spec;
}

DriveSpec qubit_cue_drive(double omega1, double omega2, double q) {
  DriveSpec spec;
  FloquetDecomposition fd;
  fd.dim = 2;
  fd.tones = 2;
  fd.omega = RealVector(2);
  fd.omega << omega1, omega2;
  fd.quasienergies = RealVector(2);
  fd.quasienergies << -q, q;
  fd.right_factor = Matrix::Identity(2, 2);
  fd.parent_unitary = [](const RealVector& theta) {
    const double p = std::abs(1.0 - theta(0) / kPi);
    const double xi = std::acos(std::sqrt(std::min(1.0, p)));
    const Complex ph = std::exp(Complex(0.0, theta(1)));
    Matrix m(2, 2);
    m << std::cos(xi), -std::sin(xi) * ph,
         std::sin(xi) * std::conj(ph), std::cos(xi);
    return m;
  };
  spec.drive = std::move(fd);
  spec.descriptor = {{"family", "qubit-cue"},
                     {"omega1", omega1},
                     {"omega2", omega2},
                     {"q", q}};
  return spec;
}

QubitCuePreset qubit_cue_default_preset() {
  // Plastic-number pair (1/ρ, 1/ρ²), ρ³ = ρ + 1: a badly-approximable
  // two-dimensional winding, plus a quasienergy from a different number field.
  const double rho = 1.3247179572447460260;
  return {kTwoPi / rho, kTwoPi / (rho * rho), kTwoPi * (std::sqrt(2.0) - 1.0)};
}

DriveSpec design_cycle_drive(const std::vector<Matrix>& gates) {
  if (gates.empty()) throw ArgumentError("gate list must be nonempty");
  const int d = static_cast<int>(gates[0].rows());
  if ((gates[0] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kUnitaryTol)
    throw ArgumentError("gates[0] must be the identity");
  for (const auto& g : gates)
    if (!is_unitary(g)) throw ArgumentError("design gates must be unitary");
  const std::int64_t n = static_cast<std::int64_t>(gates.size());
  auto steps = std::make_shared<std::vector<Matrix>>();
  steps->reserve(n);
  for (std::int64_t j = 0; j < n; ++j)
    steps->push_back(gates[j % n] * gates[(j + n - 1) % n].adjoint());
  DriveSpec spec;
  spec.drive = KickSequence{
      d, [steps, n](std::int64_t step) { return (*steps)[step % n]; }};
  nlohmann::json gj = nlohmann::json::array();
  for (const auto& g : gates) gj.push_back(matrix_to_json(g));
  spec.descriptor = {{"family", "design-cycle"}, {"gates", gj}};
  return spec;
}

double design_cycle_action(const std::vector<Matrix>& gates) {
  const std::int64_t n = static_cast<std::int64_t>(gates.size());
  double total = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    Matrix step = gates[(j + 1) % n] * gates[j % n].adjoint();
    total += operator_norm(matrix_log_principal(step));
  }
  return total;
}

namespace {

// Closed Eulerian circuit over the twelve octahedron edges; consecutive
// vertices are orthogonal Bloch axes, so every arc is a quarter great circle.
const Eigen::Vector3d kLoopVertices[12] = {
    {0, 0, 1},  {1, 0, 0},  {0, 1, 0},  {0, 0, 1},
    {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {-1, 0, 0},
    {0, 1, 0},  {0, 0, -1}, {1, 0, 0},  {0, -1, 0}};

Vector bloch_to_state(const Eigen::Vector3d& n) {
  const double beta = std::acos(std::clamp(n(2), -1.0, 1.0));
  const double phi = std::atan2(n(1), n(0));
  Vector v(2);
  v << std::cos(beta / 2.0),
      std::exp(Complex(0, phi)) * std::sin(beta / 2.0);
  return v;
}

}  // namespace

Eigen::Vector3d great_circle_loop_point(double theta) {
  double s = std::fmod(theta, kTwoPi);
  if (s < 0) s += kTwoPi;
  s = s / kTwoPi * 12.0;
  int j = std::min(11, static_cast<int>(s));
  const double arc = (s - j) * (kPi / 2.0);
  const Eigen::Vector3d& a = kLoopVertices[j];
  const Eigen::Vector3d& b = kLoopVertices[(j + 1) % 12];
  return a * std::cos(arc) + b * std::sin(arc);
}

std::vector<Vector> octahedron_states() {
  std::vector<Vector> out;
  const Eigen::Vector3d axes[6] = {{0, 0, 1},  {0, 0, -1}, {1, 0, 0},
                                   {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}};
  for (const auto& n : axes) out.push_back(bloch_to_state(n));
  return out;
}

DriveSpec great_circle_3design_drive(double omega, double q) {
  DriveSpec spec;
  FloquetDecomposition fd;
  fd.dim = 2;
  fd.tones = 1;
  fd.omega = RealVector::Constant(1, omega);
  fd.quasienergies = RealVector(2);
  fd.quasienergies << -q, q;
  fd.right_factor = Matrix::Identity(2, 2);
  fd.parent_unitary = [](const RealVector& theta) {
    Vector zero = bloch_to_state(great_circle_loop_point(theta(0)));
    Matrix p(2, 2);
    p.col(0) = zero;
    p(0, 1) = -std::conj(zero(1));
    p(1, 1) = std::conj(zero(0));
    return p;
  };
  spec.drive = std::move(fd);
  spec.descriptor = {{"family", "great-circle"}, {"omega", omega}, {"q", q}};
  return spec;
}

nlohmann::json drive_to_json(const DriveSpec& spec) { return spec.descriptor; }

}  // namespace qerg
