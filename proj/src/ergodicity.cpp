#include "qerg/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace qerg {

MomentAccumulator::MomentAccumulator(MomentKind kind, int d, int k,
                                     std::int64_t cap)
    : kind_(kind), d_(d), k_(k) {
  const std::int64_t dim =
      kind == MomentKind::State ? ipow(d, k) : ipow(std::int64_t{d} * d, k);
  check_entry_cap(dim, dim, cap);
  sum_ = Matrix::Zero(dim, dim);
}

void MomentAccumulator::add_state(const Vector& psi) {
  if (kind_ != MomentKind::State)
    throw ArgumentError("accumulator is not in state mode");
  Vector rep = kron_power(psi, k_);
  sum_.selfadjointView<Eigen::Lower>().rankUpdate(rep, 1.0);
  ++count_;
}

void MomentAccumulator::add_unitary(const Matrix& u) {
  if (kind_ != MomentKind::Unitary)
    throw ArgumentError("accumulator is not in unitary mode");
  sum_ += kron_power(kron(u.conjugate(), u), k_);
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.kind_ != kind_ || other.d_ != d_ || other.k_ != k_)
    throw ArgumentError("incompatible accumulators");
  sum_ += other.sum_;
  count_ += other.count_;
}

Matrix MomentAccumulator::mean() const {
  if (count_ == 0) throw ArgumentError("empty accumulator");
  if (kind_ == MomentKind::State) {
    Matrix m = Matrix(sum_.selfadjointView<Eigen::Lower>()) /
               static_cast<double>(count_);
    return m;
  }
  return sum_ / static_cast<double>(count_);
}

MomentAccumulator accumulate_state_moment(const EvolutionTrace& trace, int k,
                                          std::int64_t cap) {
  if (!trace.states) throw ArgumentError("trace carries no states");
  MomentAccumulator acc(MomentKind::State, trace.dim(), k, cap);
  for (const auto& psi : *trace.states) acc.add_state(psi);
  return acc;
}

MomentAccumulator accumulate_unitary_moment(const EvolutionTrace& trace, int k,
                                            std::int64_t cap) {
  MomentAccumulator acc(MomentKind::Unitary, trace.dim(), k, cap);
  for (const auto& u : trace.unitaries) acc.add_unitary(u);
  return acc;
}

MomentAccumulator accumulate_state_moment(const DriveSpec& spec,
                                          std::int64_t T, int k,
                                          const Vector& psi0,
                                          std::int64_t cap) {
  MomentAccumulator acc(MomentKind::State, spec.dim(), k, cap);
  scan_evolution(spec, integer_times(T), psi0,
                 [&](std::int64_t, double, const Matrix&, const Vector* psi) {
                   acc.add_state(*psi);
                 });
  return acc;
}

MomentAccumulator accumulate_unitary_moment(const DriveSpec& spec,
                                            std::int64_t T, int k,
                                            std::int64_t cap) {
  MomentAccumulator acc(MomentKind::Unitary, spec.dim(), k, cap);
  scan_evolution(spec, integer_times(T), std::nullopt,
                 [&](std::int64_t, double, const Matrix& u, const Vector*) {
                   acc.add_unitary(u);
                 });
  return acc;
}

double khse_deviation(const MomentAccumulator& acc) {
  if (acc.kind() != MomentKind::State)
    throw ArgumentError("khse_deviation expects a state accumulator");
  return trace_distance(acc.mean(), haar_state_moment(acc.dim(), acc.order()));
}

double unitary_deviation(const MomentAccumulator& acc,
                         const std::optional<Matrix>& reference) {
  if (acc.kind() != MomentKind::Unitary)
    throw ArgumentError("unitary_deviation expects a unitary accumulator");
  Matrix ref;
  if (reference) {
    ref = *reference;
  } else if (acc.order() == 1) {
    ref = haar_unitary_first_moment(acc.dim());
  } else {
    throw ArgumentError(
        "no closed-form reference for k > 1; pass one explicitly");
  }
  return (acc.mean() - ref).norm();
}

namespace {

FramePotentialEstimate pair_estimate(std::int64_t n, std::int64_t pair_budget,
                                     Rng& rng,
                                     const std::function<double(std::int64_t,
                                                                std::int64_t)>&
                                         term) {
  if (n < 2) throw ArgumentError("need at least two samples");
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  double s = 0.0, s2 = 0.0;
  for (std::int64_t b = 0; b < pair_budget; ++b) {
    const double x = term(pick(rng), pick(rng));
    s += x;
    s2 += x * x;
  }
  FramePotentialEstimate est;
  est.pairs = pair_budget;
  est.value = s / pair_budget;
  est.stderr_ = std::sqrt(
      std::max(0.0, s2 / pair_budget - est.value * est.value) / pair_budget);
  return est;
}

}  // namespace

FramePotentialEstimate state_frame_potential(const std::vector<Vector>& states,
                                             int k, std::int64_t pair_budget,
                                             Rng& rng) {
  return pair_estimate(
      static_cast<std::int64_t>(states.size()), pair_budget, rng,
      [&](std::int64_t i, std::int64_t j) {
        return std::pow(std::norm(Complex(states[i].adjoint() * states[j])), k);
      });
}

FramePotentialEstimate frame_potential_time(const EvolutionTrace& trace, int k,
                                            MomentKind kind,
                                            std::int64_t pair_budget,
                                            Rng& rng) {
  if (kind == MomentKind::State) {
    if (!trace.states) throw ArgumentError("trace carries no states");
    return state_frame_potential(*trace.states, k, pair_budget, rng);
  }
  return pair_estimate(
      static_cast<std::int64_t>(trace.unitaries.size()), pair_budget, rng,
      [&](std::int64_t i, std::int64_t j) {
        return std::pow(
            std::abs((trace.unitaries[i].adjoint() * trace.unitaries[j])
                         .trace()),
            2 * k);
      });
}

double epsilon_net_radius(const std::vector<Vector>& states,
                          std::int64_t probe_count, Rng& rng) {
  if (states.empty()) throw ArgumentError("empty state list");
  const int d = static_cast<int>(states[0].size());
  double radius = 0.0;
  for (std::int64_t p = 0; p < probe_count; ++p) {
    Vector probe = haar_random_state(d, rng);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : states) {
      const double ov = std::norm(Complex(probe.adjoint() * s));
      best = std::min(best, 1.0 - ov);  // squared trace distance
      if (best <= 0.0) break;
    }
    radius = std::max(radius, std::sqrt(std::max(0.0, best)));
  }
  return radius;
}

double gamma_bound(int d, int k) {
  const double f = haar_state_frame_potential(d, k);
  return std::sqrt(1.0 - std::pow(f, 1.0 / k));
}

SpeedLimitReport speed_limit_audit(const EvolutionTrace& trace,
                                   const std::vector<Matrix>& kick_generators) {
  if (!trace.states) throw ArgumentError("trace carries no states");
  const auto& psi = *trace.states;
  if (psi.size() != kick_generators.size() + 1)
    throw ArgumentError("need one generator per step between states");
  SpeedLimitReport rep;
  for (std::size_t j = 0; j + 1 < psi.size(); ++j) {
    rep.path_length += trace_distance(psi[j], psi[j + 1]);
    rep.action_bound += operator_norm(kick_generators[j]);
  }
  return rep;
}

std::int64_t BoundsReport::packing_n(double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must be in (0,1)");
  return static_cast<std::int64_t>(
      std::ceil(std::pow(eps, -2.0 * (d - 1))));
}

BoundsReport b_bounds(int d, int k) {
  if (d < 2 || k < 1) throw ArgumentError("require d >= 2, k >= 1");
  BoundsReport rep;
  rep.d = d;
  rep.k = k;
  rep.gamma = gamma_bound(d, k);
  const double dsym = static_cast<double>(symmetric_dimension(d, k));
  rep.b1 = std::sqrt(2.0) / (3.0 * k) * (dsym - 1.0);
  // C = 2^{5-4d} (d-1)^{2-2d} (2d-3)^{2d-3}; for d = 2 the last factor is 1.
  const double C = std::pow(2.0, 5.0 - 4.0 * d) *
                   std::pow(d - 1.0, 2.0 - 2.0 * d) *
                   std::pow(2.0 * d - 3.0, 2.0 * d - 3.0);
  rep.b2 = C * std::pow(rep.gamma, 3.0 - 2.0 * d);
  return rep;
}

double pu_distance(const Matrix& u, const Matrix& v) {
  if (!is_unitary(u) || !is_unitary(v))
    throw ArgumentError("pu_distance expects unitary inputs");
  const int d = static_cast<int>(u.rows());
  const double fid = std::norm(Complex((u.adjoint() * v).trace())) /
                     (static_cast<double>(d) * d);
  return std::sqrt(std::max(0.0, 1.0 - fid));
}

void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergencePoint>& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "T,deviation,frame_potential,frame_potential_stderr\n";
  out.precision(17);
  for (const auto& p : series)
    out << p.T << ',' << p.deviation << ',' << p.frame_potential << ','
        << p.frame_potential_stderr << '\n';
}

std::vector<ConvergencePoint> state_convergence_series(
    const DriveSpec& spec, const std::vector<std::int64_t>& checkpoints, int k,
    const Vector& psi0, std::int64_t pair_budget, Rng& rng) {
  std::vector<std::int64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  const std::int64_t T = cps.empty() ? 0 : cps.back();
  const int d = spec.dim();
  MomentAccumulator acc(MomentKind::State, d, k);
  std::vector<Vector> states;
  states.reserve(T);
  std::vector<ConvergencePoint> series;
  std::size_t next = 0;
  scan_evolution(spec, integer_times(T), psi0,
                 [&](std::int64_t i, double, const Matrix&, const Vector* psi) {
                   acc.add_state(*psi);
                   states.push_back(*psi);
                   while (next < cps.size() && i + 1 == cps[next]) {
                     ConvergencePoint p;
                     p.T = cps[next];
                     p.deviation = khse_deviation(acc);
                     auto fp = state_frame_potential(states, k, pair_budget, rng);
                     p.frame_potential = fp.value;
                     p.frame_potential_stderr = fp.stderr_;
                     series.push_back(p);
                     ++next;
                   }
                 });
  return series;
}

double loglog_slope(const std::vector<ConvergencePoint>& series) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(series.size());
  for (const auto& p : series) {
    const double x = std::log10(static_cast<double>(p.T));
    const double y = std::log10(std::max(p.deviation, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qerg
