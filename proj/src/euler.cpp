#include "qerg/euler.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "qerg/parallel.hpp"

namespace qerg {

namespace {

int tri_index(int r, int j) {
  // (r, j) with 1 <= r <= j, row-major over j then r.
  return (j - 1) * j / 2 + (r - 1);
}

double mod_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace

EulerAngles EulerAngles::zeros(int d) {
  EulerAngles a;
  a.d = d;
  a.xi.assign(d * (d - 1) / 2, 0.0);
  a.phi.assign(d * (d - 1) / 2, 0.0);
  a.eta.assign(d - 1, 0.0);
  return a;
}

double& EulerAngles::xi_at(int r, int j) { return xi[tri_index(r, j)]; }
double& EulerAngles::phi_at(int r, int j) { return phi[tri_index(r, j)]; }
double EulerAngles::xi_at(int r, int j) const { return xi[tri_index(r, j)]; }
double EulerAngles::phi_at(int r, int j) const { return phi[tri_index(r, j)]; }

Matrix rotation_matrix(int j, double xi, double phi, double eta, int d) {
  if (j < 1 || j > d - 1) throw ArgumentError("rotation index out of range");
  Matrix m = Matrix::Identity(d, d);
  const double c = std::cos(xi), s = std::sin(xi);
  m(j - 1, j - 1) = c * std::exp(Complex(0, eta));
  m(j - 1, j) = -s * std::exp(Complex(0, phi));
  m(j, j - 1) = s * std::exp(Complex(0, -phi));
  m(j, j) = c * std::exp(Complex(0, -eta));
  return m;
}

Matrix hurwitz_unitary(const EulerAngles& a) {
  const int d = a.d;
  if (d < 2) throw ArgumentError("dimension must be >= 2");
  Matrix v = Matrix::Identity(d, d);
  for (int j = d - 1; j >= 1; --j) {
    Matrix ej = Matrix::Identity(d, d);
    for (int r = 1; r <= j; ++r) {
      const double eta = (r == j) ? a.eta[j - 1] : 0.0;
      ej = ej * rotation_matrix(r, a.xi_at(r, j), a.phi_at(r, j), eta, d);
    }
    v = v * ej;
  }
  return v;
}

double measure_preserving_xi(double theta, int r) {
  if (r < 1) throw ArgumentError("r must be >= 1");
  const double u = std::abs(1.0 - mod_2pi(theta) / kPi);
  return std::asin(std::pow(std::min(1.0, u), 1.0 / (2.0 * r)));
}

EulerAngles sample_angles(int d, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  EulerAngles a = EulerAngles::zeros(d);
  for (int j = 1; j <= d - 1; ++j) {
    a.eta[j - 1] = uni(rng);
    for (int r = 1; r <= j; ++r) {
      a.phi_at(r, j) = uni(rng);
      a.xi_at(r, j) = measure_preserving_xi(uni(rng), r);
    }
  }
  return a;
}

PushforwardReport haar_pushforward_check(int d, std::int64_t n, Rng& rng,
                                         int workers) {
  if (d > 4) throw SizeCapError("full-moment comparison supported for d <= 4");
  const int dim = d * d;
  auto chunks = make_chunks(n, workers, rng());
  std::vector<Matrix> sums(chunks.size(), Matrix::Zero(dim, dim));
  std::vector<Matrix> sqs(chunks.size(), Matrix::Zero(dim, dim));
  std::vector<double> fp(chunks.size(), 0.0), fp2(chunks.size(), 0.0);
  std::vector<std::int64_t> pairs(chunks.size(), 0);
  run_chunks(
      chunks,
      [&](const Chunk& c, int ci) {
        Rng sub(c.seed);
        Matrix sum = Matrix::Zero(dim, dim), sq = Matrix::Zero(dim, dim);
        Matrix prev;
        for (std::int64_t i = c.begin; i < c.end; ++i) {
          Matrix v = hurwitz_unitary(sample_angles(d, sub));
          Matrix term = kron(v.conjugate(), v);
          sum += term;
          sq += term.cwiseAbs2();
          if ((i - c.begin) % 2 == 1) {
            const double x =
                std::pow(std::abs((prev.adjoint() * v).trace()), 4);
            fp[ci] += x;
            fp2[ci] += x * x;
            ++pairs[ci];
          }
          prev = v;
        }
        sums[ci] = sum;
        sqs[ci] = sq;
      },
      workers);
  Matrix total = Matrix::Zero(dim, dim), totalsq = Matrix::Zero(dim, dim);
  double fps = 0, fps2 = 0;
  std::int64_t np = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    total += sums[i];
    totalsq += sqs[i];
    fps += fp[i];
    fps2 += fp2[i];
    np += pairs[i];
  }
  PushforwardReport rep;
  rep.d = d;
  rep.samples = n;
  Matrix mean = total / static_cast<double>(n);
  Matrix ref = haar_unitary_first_moment(d);
  rep.first_moment_deviation = (mean - ref).cwiseAbs().maxCoeff();
  double max_se = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double var = totalsq(i, j).real() / n - std::norm(mean(i, j));
      max_se = std::max(max_se, std::sqrt(std::max(0.0, var) / n));
    }
  rep.first_moment_stderr = max_se;
  rep.frame_potential_k2 = fps / np;
  const double var = std::max(0.0, fps2 / np - rep.frame_potential_k2 *
                                                   rep.frame_potential_k2);
  rep.frame_potential_k2_stderr = std::sqrt(var / np);
  return rep;
}

namespace {

// Angle assignment for the drive: the quasienergy pair (η₁, φ₁₁) is handled
// separately; every other angle advances linearly with its own tone.
struct CueAssignment {
  // tone index driving each ξ_{r,j} (as θ before substitution), each φ_{r,j}
  // except (1,1), and each η_j except η₁; ω_{m-1} (last tone) drives φ₁₁.
  std::vector<int> xi_tone;   // triangular storage
  std::vector<int> phi_tone;  // -1 at (1,1)
  std::vector<int> eta_tone;  // -1 at η₁
  int m = 0;

  static CueAssignment standard(int d) {
    CueAssignment a;
    const int ntri = d * (d - 1) / 2;
    a.xi_tone.assign(ntri, -1);
    a.phi_tone.assign(ntri, -1);
    a.eta_tone.assign(d - 1, -1);
    int next = 0;
    for (int j = 1; j <= d - 1; ++j)
      for (int r = 1; r <= j; ++r) a.xi_tone[tri_index(r, j)] = next++;
    for (int j = 1; j <= d - 1; ++j)
      for (int r = 1; r <= j; ++r) {
        if (r == 1 && j == 1) continue;
        a.phi_tone[tri_index(r, j)] = next++;
      }
    for (int j = 2; j <= d - 1; ++j) a.eta_tone[j - 1] = next++;
    a.m = next + 1;  // the last tone drives φ₁₁
    return a;
  }

  EulerAngles angles_on_torus(int d, const RealVector& theta) const {
    // P(θ) uses η₁ = 0 and φ₁₁ = θ_{m-1}; the quasienergy phase is restored
    // by the diagonal Q factor.
    EulerAngles a = EulerAngles::zeros(d);
    for (int j = 1; j <= d - 1; ++j) {
      for (int r = 1; r <= j; ++r) {
        a.xi_at(r, j) =
            measure_preserving_xi(theta(xi_tone[tri_index(r, j)]), r);
        if (!(r == 1 && j == 1))
          a.phi_at(r, j) = theta(phi_tone[tri_index(r, j)]);
      }
      if (j >= 2) a.eta[j - 1] = theta(eta_tone[j - 1]);
    }
    a.phi_at(1, 1) = theta(m - 1);
    a.eta[0] = 0.0;
    return a;
  }
};

}  // namespace

DriveSpec cue_drive(int d, const std::vector<double>& omegas,
                    const std::vector<double>& quasienergies) {
  const int m = d * d - 2;
  if (static_cast<int>(omegas.size()) != m)
    throw ArgumentError("expected d^2-2 frequencies");
  if (static_cast<int>(quasienergies.size()) != d - 1)
    throw ArgumentError("expected d-1 quasienergies");
  auto assign = std::make_shared<CueAssignment>(CueAssignment::standard(d));

  FloquetDecomposition fd;
  fd.dim = d;
  fd.tones = m;
  fd.omega = RealVector(m);
  for (int i = 0; i < m; ++i) fd.omega(i) = omegas[i];
  fd.quasienergies = RealVector(d);
  fd.quasienergies(0) = -quasienergies[0];
  for (int a = 1; a <= d - 1; ++a) fd.quasienergies(a) = quasienergies[a - 1];
  fd.parent_unitary = [d, assign](const RealVector& theta) {
    return hurwitz_unitary(assign->angles_on_torus(d, theta));
  };
  // P(0) has φ₁₁ = 0, η₁ = 0: exactly V evaluated at t = 0.
  Matrix p0 = fd.parent_unitary(RealVector::Zero(m));
  fd.right_factor = p0.adjoint();

  DriveSpec spec;
  spec.drive = std::move(fd);
  spec.descriptor = {{"family", "cue"},
                     {"d", d},
                     {"omegas", omegas},
                     {"quasienergies", quasienergies}};
  return spec;
}

std::pair<std::vector<double>, std::vector<double>> cue_default_frequencies(
    int d) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                               37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
  const int m = d * d - 2;
  const int need = m + d - 1;
  if (need > static_cast<int>(std::size(primes)))
    throw ArgumentError("dimension too large for the default family");
  std::vector<double> om(m), qs(d - 1);
  for (int i = 0; i < m; ++i) {
    const double s = std::sqrt(static_cast<double>(primes[i]));
    om[i] = kTwoPi * (s - std::floor(s));
  }
  for (int a = 0; a < d - 1; ++a) {
    const double s = std::sqrt(static_cast<double>(primes[m + a]));
    qs[a] = kTwoPi * (s - std::floor(s));
  }
  return {om, qs};
}

}  // namespace qerg
