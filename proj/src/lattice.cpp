#include "qerg/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qerg/haar.hpp"
#include "qerg/json_util.hpp"

namespace qerg {

namespace {

std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<int> neg(const std::vector<int>& a) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vector perp_qubit(const Vector& v) {
  Vector w(2);
  w << -std::conj(v(1)), std::conj(v(0));
  return w;
}

double multiplicity(const std::vector<int>& alphas) {
  std::map<int, int> counts;
  for (int a : alphas) ++counts[a];
  double p = std::tgamma(alphas.size() + 1.0);
  for (auto& [a, c] : counts) p /= std::tgamma(c + 1.0);
  return std::round(p);
}

}  // namespace

Vector ErgodicLattice::component(int alpha, const std::vector<int>& n) const {
  for (const auto& c : components)
    if (c.alpha == alpha && c.n == n) return c.vec;
  return Vector::Zero(d);
}

OrthonormalityReport verify_orthonormality(ErgodicLattice& lat, double tol) {
  // All offsets n' in the Minkowski difference of supports.
  std::set<std::vector<int>> offsets;
  offsets.insert(std::vector<int>(lat.m, 0));
  for (const auto& a : lat.components)
    for (const auto& b : lat.components) {
      std::vector<int> diff(lat.m);
      for (int i = 0; i < lat.m; ++i) diff[i] = b.n[i] - a.n[i];
      offsets.insert(diff);
    }
  double worst = 0.0;
  for (int alpha = 0; alpha < lat.d; ++alpha)
    for (int alphap = 0; alphap < lat.d; ++alphap)
      for (const auto& np : offsets) {
        Complex s = 0.0;
        for (const auto& c : lat.components) {
          if (c.alpha != alpha) continue;
          s += Complex(c.vec.adjoint() * lat.component(alphap, add(c.n, np)));
        }
        const bool diag = alpha == alphap &&
                          std::all_of(np.begin(), np.end(),
                                      [](int x) { return x == 0; });
        worst = std::max(worst, std::abs(s - (diag ? 1.0 : 0.0)));
      }
  OrthonormalityReport rep;
  rep.max_violation = worst;
  rep.tol = tol;
  rep.pass = worst <= tol;
  if (rep.pass) lat.verified = true;
  return rep;
}

KhseConstraintReport verify_khse_constraints(const ErgodicLattice& lat, int k,
                                             double tol,
                                             std::int64_t term_cap) {
  const int d = lat.d;
  const std::int64_t dim = ipow(d, k);
  // per-α support lists
  std::vector<std::vector<const LatticeComponent*>> support(d);
  for (const auto& c : lat.components) support[c.alpha].push_back(&c);
  std::int64_t max_s = 0;
  for (const auto& s : support) max_s = std::max<std::int64_t>(max_s, s.size());
  std::int64_t tuples = 1;
  for (int j = 0; j < k; ++j) tuples *= max_s;
  if (tuples * dim > term_cap)
    throw SizeCapError("resonance enumeration exceeds the term cap");

  const Matrix proj = symmetric_projector(d, k);
  const Matrix rho_haar = haar_state_moment(d, k);

  KhseConstraintReport rep;
  rep.k = k;
  rep.tol = tol;

  // iterate α tuples (all of them; permutation-equivalent tuples give
  // permutation-conjugated sums, checked anyway for completeness)
  std::vector<int> alphas(k, 0);
  while (true) {
    // group the k-fold tensor products by total lattice momentum
    std::map<std::vector<int>, Vector> groups;
    std::vector<int> pick(k, 0);
    bool more = true;
    while (more) {
      std::vector<int> total(lat.m, 0);
      Vector v = Vector::Ones(1);
      bool zero = false;
      for (int j = 0; j < k && !zero; ++j) {
        const auto& comps = support[alphas[j]];
        if (comps.empty()) {
          zero = true;
          break;
        }
        const auto* c = comps[pick[j]];
        total = add(total, c->n);
        v = kron(v, c->vec);
      }
      if (!zero) {
        auto [it, inserted] = groups.try_emplace(total, v);
        if (!inserted) it->second += v;
        rep.terms_enumerated += 1;
      }
      // advance the mixed-radix counter
      more = false;
      for (int j = 0; j < k; ++j) {
        const int radix = static_cast<int>(support[alphas[j]].size());
        if (radix == 0) break;
        if (++pick[j] < radix) {
          more = true;
          break;
        }
        pick[j] = 0;
      }
    }
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& [total, v] : groups) sum += v * v.adjoint();
    Matrix rho = multiplicity(alphas) * (proj * sum * proj);
    rep.max_deviation = std::max(rep.max_deviation,
                                 (rho - rho_haar).cwiseAbs().maxCoeff());
    // next α tuple
    int j = 0;
    for (; j < k; ++j) {
      if (++alphas[j] < d) break;
      alphas[j] = 0;
    }
    if (j == k) break;
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

ErgodicLattice el_11(int d) {
  ErgodicLattice lat;
  lat.d = d;
  lat.m = 1;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int alpha = 0; alpha < d; ++alpha)
    for (int n = 0; n < d; ++n) {
      LatticeComponent c;
      c.alpha = alpha;
      c.n = {n};
      Vector v = Vector::Zero(d);
      v(n) = norm * std::exp(Complex(0.0, kTwoPi * n * alpha / d));
      c.vec = v;
      lat.components.push_back(std::move(c));
    }
  return lat;
}

ErgodicLattice el_12_qubit() {
  // Magnitudes a± = (1/2) sqrt(1 ± 1/sqrt(3)); the sign pattern
  // (-a+, -a-, +a-, -a+) over the basis pattern (φ-, φ+, φ-, φ+) satisfies
  // the orthonormality and second-moment constraints exactly and pins the
  // reconstructed eigenstate to |0⟩ at θ = 0 with the φ± below.
  const double ap = 0.5 * std::sqrt(1.0 + 1.0 / std::sqrt(3.0));
  const double am = 0.5 * std::sqrt(1.0 - 1.0 / std::sqrt(3.0));
  const Complex w = std::exp(Complex(0.0, 3.0 * kPi / 4.0));
  Vector phim(2), phip(2);
  phim << -std::sqrt(0.5 - 1.0 / std::sqrt(6.0)),
      -w * std::sqrt(0.5 + 1.0 / std::sqrt(6.0));
  phip << -std::sqrt(0.5 + 1.0 / std::sqrt(6.0)),
      w * std::sqrt(0.5 - 1.0 / std::sqrt(6.0));
  const double coeff[4] = {-ap, -am, am, -ap};
  const Vector* basis[4] = {&phim, &phip, &phim, &phip};

  ErgodicLattice lat;
  lat.d = 2;
  lat.m = 1;
  for (int n = 0; n < 4; ++n)
    lat.components.push_back({0, {n}, coeff[n] * (*basis[n])});
  for (int n = 0; n < 4; ++n)
    lat.components.push_back({1, {-n}, perp_qubit(coeff[n] * (*basis[n]))});
  return lat;
}

ErgodicLattice el_23_qubit() {
  const double s2 = std::sqrt(2.0);
  Vector plus(2), minus(2);
  plus << 1.0 / s2, 1.0 / s2;
  minus << 1.0 / s2, -1.0 / s2;
  // Unit vector v with <+|v> = -1/sqrt(3).
  Vector v = std::sqrt(2.0 / 3.0) * minus - std::sqrt(1.0 / 3.0) * plus;
  Vector vperp = perp_qubit(v);
  const double norm = 1.0 / (2.0 * s2);

  ErgodicLattice lat;
  lat.d = 2;
  lat.m = 2;
  lat.components.push_back({0, {0, 0}, norm * (plus + v)});
  lat.components.push_back({0, {0, 1}, norm * (minus - vperp)});
  lat.components.push_back({0, {1, 0}, norm * (minus + vperp)});
  lat.components.push_back({0, {1, 1}, norm * (plus - v)});
  for (int i = 0; i < 4; ++i) {
    const auto& c = lat.components[i];
    lat.components.push_back({1, neg(c.n), perp_qubit(c.vec)});
  }
  return lat;
}

ReconstructedFrame reconstruct_qe(const ErgodicLattice& lat,
                                  const RealVector& theta) {
  if (theta.size() != lat.m) throw ArgumentError("theta dimension mismatch");
  ReconstructedFrame out;
  out.verified = lat.verified;
  out.states.assign(lat.d, Vector::Zero(lat.d));
  for (const auto& c : lat.components) {
    double phase = 0.0;
    for (int i = 0; i < lat.m; ++i) phase -= c.n[i] * theta(i);
    out.states[c.alpha] += std::exp(Complex(0.0, phase)) * c.vec;
  }
  return out;
}

DriveSpec lattice_to_drive(const ErgodicLattice& lat,
                           const std::vector<double>& omegas,
                           const std::vector<double>& quasienergies) {
  if (static_cast<int>(omegas.size()) != lat.m)
    throw ArgumentError("expected one frequency per tone");
  if (static_cast<int>(quasienergies.size()) != lat.d - 1)
    throw ArgumentError("expected d-1 quasienergies");
  ErgodicLattice checked = lat;
  if (!checked.verified) {
    auto rep = verify_orthonormality(checked, 1e-10);
    if (!rep.pass)
      throw ArgumentError("lattice fails orthonormality; cannot synthesize");
  }
  auto latp = std::make_shared<ErgodicLattice>(std::move(checked));

  FloquetDecomposition fd;
  fd.dim = lat.d;
  fd.tones = lat.m;
  fd.omega = RealVector(lat.m);
  for (int i = 0; i < lat.m; ++i) fd.omega(i) = omegas[i];
  fd.quasienergies = RealVector::Zero(lat.d);
  for (int a = 1; a < lat.d; ++a) fd.quasienergies(a) = quasienergies[a - 1];
  fd.parent_unitary = [latp](const RealVector& theta) {
    auto frame = reconstruct_qe(*latp, theta);
    Matrix p(latp->d, latp->d);
    for (int a = 0; a < latp->d; ++a) p.col(a) = frame.states[a];
    return p;
  };
  fd.right_factor = fd.parent_unitary(RealVector::Zero(lat.m)).adjoint();

  DriveSpec spec;
  spec.drive = std::move(fd);
  spec.descriptor = {{"family", "lattice"},
                     {"lattice", lattice_to_json(lat)},
                     {"omegas", omegas},
                     {"quasienergies", quasienergies}};
  return spec;
}

namespace {

RhoSymResult rho_sym_fixed_grid(const FloquetDecomposition& dec,
                                const std::vector<int>& alphas, int points) {
  const int d = dec.dim;
  const int k = static_cast<int>(alphas.size());
  const int m = dec.tones;
  const std::int64_t dim = ipow(d, k);
  check_entry_cap(dim, dim);
  Matrix sum = Matrix::Zero(dim, dim);
  std::vector<int> idx(m, 0);
  const std::int64_t cells = ipow(points, m);
  RealVector theta(m);
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    std::int64_t rest = cell;
    for (int i = 0; i < m; ++i) {
      theta(i) = kTwoPi * (static_cast<double>(rest % points) + 0.5) / points;
      rest /= points;
    }
    Matrix p = dec.parent_unitary(theta);
    Vector v = Vector::Ones(1);
    for (int j = 0; j < k; ++j) v = kron(v, Vector(p.col(alphas[j])));
    sum.selfadjointView<Eigen::Lower>().rankUpdate(v, 1.0);
  }
  Matrix mean = Matrix(sum.selfadjointView<Eigen::Lower>()) /
                static_cast<double>(cells);
  const Matrix proj = symmetric_projector(d, k);
  RhoSymResult out;
  out.rho = multiplicity(alphas) * (proj * mean * proj);
  out.trace = out.rho.trace().real();
  return out;
}

}  // namespace

RhoSymResult rho_sym_alpha(const FloquetDecomposition& dec,
                           const std::vector<int>& alphas,
                           const TorusQuadrature& quad, bool check_resolution,
                           double resolution_tol) {
  RhoSymResult out = rho_sym_fixed_grid(dec, alphas, quad.points_per_tone);
  if (check_resolution) {
    RhoSymResult fine =
        rho_sym_fixed_grid(dec, alphas, 2 * quad.points_per_tone);
    out.doubling_shift = (out.rho - fine.rho).cwiseAbs().maxCoeff();
    out.under_resolved = out.doubling_shift > resolution_tol;
    out.rho = fine.rho;
    out.trace = fine.trace;
  }
  return out;
}

TheoremCheckReport check_theorem_g2(const FloquetDecomposition& dec, int k,
                                    const TorusQuadrature& quad, double tol) {
  const int d = dec.dim;
  const Matrix rho_haar = haar_state_moment(d, k);
  TheoremCheckReport rep;
  rep.k = k;
  rep.tol = tol;
  // α tuples up to permutation equivalence: non-decreasing tuples.
  std::vector<int> alphas(k, 0);
  while (true) {
    auto res = rho_sym_alpha(dec, alphas, quad);
    rep.max_trace_distance = std::max(
        rep.max_trace_distance, trace_distance(res.rho, rho_haar));
    int j = k - 1;
    for (; j >= 0; --j) {
      if (alphas[j] + 1 < d) {
        ++alphas[j];
        for (int l = j + 1; l < k; ++l) alphas[l] = alphas[j];
        break;
      }
    }
    if (j < 0) break;
  }
  rep.pass = rep.max_trace_distance <= tol;
  return rep;
}

nlohmann::json lattice_to_json(const ErgodicLattice& lat) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : lat.components)
    comps.push_back({{"alpha", c.alpha}, {"n", c.n},
                     {"vec", vector_to_json(c.vec)}});
  return {{"d", lat.d}, {"m", lat.m}, {"components", comps}};
}

ErgodicLattice lattice_from_json(const nlohmann::json& j) {
  ErgodicLattice lat;
  lat.d = j.at("d").get<int>();
  lat.m = j.at("m").get<int>();
  for (const auto& cj : j.at("components")) {
    LatticeComponent c;
    c.alpha = cj.at("alpha").get<int>();
    c.n = cj.at("n").get<std::vector<int>>();
    c.vec = json_to_vector(cj.at("vec"));
    if (static_cast<int>(c.vec.size()) != lat.d ||
        static_cast<int>(c.n.size()) != lat.m)
      throw ArgumentError("malformed lattice component");
    lat.components.push_back(std::move(c));
  }
  return lat;
}

}  // namespace qerg
