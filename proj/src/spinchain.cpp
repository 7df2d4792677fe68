#include "qerg/spinchain.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace qerg {

std::string to_string(ChainDrive d) {
  switch (d) {
    case ChainDrive::Floquet: return "floquet";
    case ChainDrive::Cosine: return "cosine";
    case ChainDrive::Fibonacci: return "fibonacci";
  }
  return "?";
}

void ChainConfig::validate() const {
  if (L < 2 || L > 12) throw ArgumentError("L must be in [2, 12]");
  if (K < 1 || K > L) throw ArgumentError("K must be in [1, L]");
  if (T_opt < 1 || T_max < T_opt) throw ArgumentError("bad horizons");
}

std::pair<Matrix, Matrix> ising_hamiltonians(int L) {
  if (L < 2) throw ArgumentError("L must be >= 2");
  const std::int64_t dim = ipow(2, L);
  check_entry_cap(dim, dim);
  auto build = [L, dim](char a) {
    Matrix h = Matrix::Zero(dim, dim);
    auto add_string = [&](const std::string& s, double coeff) {
      h += coeff * pauli_matrix({L, s});
    };
    for (int j = 0; j < L; ++j) {
      std::string s(L, 'I');
      s[j] = a;
      add_string(s, 1.0);
    }
    for (int j = 1; j < L; ++j) {
      std::string s(L, 'I');
      s[j - 1] = a;
      s[j] = a;
      add_string(s, 1.0);
    }
    std::string s(L, 'I');
    s[0] = a;
    add_string(s, 0.1);
    return h;
  };
  return {build('X'), build('Z')};
}

std::vector<PauliString> kbody_basis(int L, int K) {
  if (K < 1 || K > L) throw ArgumentError("K must be in [1, L]");
  std::vector<PauliString> basis;
  // sites chosen by combination, letters by odometer over {X,Y,Z}
  static const char letters[3] = {'X', 'Y', 'Z'};
  for (int w = 1; w <= K; ++w) {
    std::vector<int> sites(w);
    for (int i = 0; i < w; ++i) sites[i] = i;
    while (true) {
      std::vector<int> pick(w, 0);
      while (true) {
        std::string s(L, 'I');
        for (int i = 0; i < w; ++i) s[sites[i]] = letters[pick[i]];
        basis.push_back({L, s});
        int i = w - 1;
        for (; i >= 0; --i) {
          if (++pick[i] < 3) break;
          pick[i] = 0;
        }
        if (i < 0) break;
      }
      // next site combination
      int i = w - 1;
      for (; i >= 0; --i)
        if (sites[i] < L - (w - i)) break;
      if (i < 0) break;
      ++sites[i];
      for (int l = i + 1; l < w; ++l) sites[l] = sites[l - 1] + 1;
    }
  }
  return basis;
}

PauliExpectationTable::PauliExpectationTable(
    int L, const std::vector<PauliString>& basis)
    : L_(L) {
  const std::int64_t dim = ipow(2, L);
  perm_.reserve(basis.size());
  phase_.reserve(basis.size());
  for (const auto& s : basis) {
    if (s.length != L) throw ArgumentError("string length mismatch");
    std::vector<std::int32_t> perm(dim);
    std::vector<Complex> phase(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      std::int64_t j = i;
      Complex ph = 1.0;
      for (int site = 0; site < L; ++site) {
        const int bit = static_cast<int>((i >> (L - 1 - site)) & 1);
        switch (s.letters[site]) {
          case 'X': j ^= std::int64_t{1} << (L - 1 - site); break;
          case 'Y':
            j ^= std::int64_t{1} << (L - 1 - site);
            ph *= bit == 0 ? Complex(0, 1) : Complex(0, -1);
            break;
          case 'Z':
            if (bit) ph = -ph;
            break;
          default: break;
        }
      }
      // S|i> = ph |j>: store by output index for a gather in expectations()
      perm[j] = static_cast<std::int32_t>(i);
      phase[j] = ph;
    }
    perm_.push_back(std::move(perm));
    phase_.push_back(std::move(phase));
  }
}

Eigen::VectorXd PauliExpectationTable::expectations(const Vector& psi) const {
  const auto dim = psi.size();
  Eigen::VectorXd out(size());
  for (int s = 0; s < size(); ++s) {
    const auto& perm = perm_[s];
    const auto& phase = phase_[s];
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j)
      acc += std::conj(psi(j)) * phase[j] * psi(perm[j]);
    out(s) = acc.real();
  }
  return out;
}

double PauliExpectationTable::expectation_dense(const PauliString& s,
                                                const Vector& psi) const {
  Matrix m = pauli_matrix(s);
  return Complex(psi.adjoint() * m * psi).real();
}

namespace {

// In-place Walsh-Hadamard transform of a 2^L amplitude vector (unnormalized
// butterflies; callers fold in 2^{-L} or 2^{-L/2} as needed).
void fwht(Vector& v) {
  const Eigen::Index n = v.size();
  for (Eigen::Index h = 1; h < n; h <<= 1)
    for (Eigen::Index i = 0; i < n; i += h << 1)
      for (Eigen::Index j = i; j < i + h; ++j) {
        const Complex a = v(j), b = v(j + h);
        v(j) = a + b;
        v(j + h) = a - b;
      }
}

// Both Ising Hamiltonians share one diagonal profile: H1 is diagonal in the
// computational basis, H0 is the same profile conjugated by the global
// Hadamard. The kicked evolution therefore reduces to diagonal phase
// multiplications plus Walsh transforms, and the interpolated cosine kick
// e^{-i[(1-x)H0 + xH1]} to a Chebyshev series in the structured matvec.
class ChainEvolver {
 public:
  explicit ChainEvolver(const ChainConfig& cfg) : cfg_(cfg) {
    const std::int64_t dim = ipow(2, cfg.L);
    diag_ = RealVector(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      auto spin = [&](int site) {
        return 1.0 - 2.0 * ((i >> (cfg.L - 1 - site)) & 1);
      };
      double e = 0.1 * spin(0);
      for (int j = 0; j < cfg.L; ++j) e += spin(j);
      for (int j = 1; j < cfg.L; ++j) e += spin(j - 1) * spin(j);
      diag_(i) = e;
    }
    phase1_ = Vector(dim);
    for (std::int64_t i = 0; i < dim; ++i)
      phase1_(i) = std::exp(Complex(0.0, -diag_(i)));
    scale_ = 1.0 / static_cast<double>(dim);

    if (cfg.drive == ChainDrive::Cosine) {
      // Jacobi-Anger coefficients for e^{-i a y} on y in [-1, 1]
      radius_ = diag_.cwiseAbs().maxCoeff() * 1.0000001;
      Complex ik(1.0, 0.0);
      for (int k = 0; k < 256; ++k) {
        const double jk = std::cyl_bessel_j(k, radius_);
        cheb_.push_back((k == 0 ? 1.0 : 2.0) * ik * jk);
        ik *= Complex(0.0, -1.0);
        if (k > radius_ && std::abs(jk) < 1e-18) break;
      }
      tmp_a_.resize(dim);
      tmp_b_.resize(dim);
      tmp_c_.resize(dim);
      tmp_d_.resize(dim);
    }
  }

  void apply_gate(std::int64_t n, Vector& psi) const {
    switch (cfg_.drive) {
      case ChainDrive::Floquet:
        n % 2 == 0 ? apply_g0(psi) : apply_g1(psi);
        return;
      case ChainDrive::Fibonacci:
        fibonacci_selector(cfg_.omega1, cfg_.omega2, n) ? apply_g1(psi)
                                                        : apply_g0(psi);
        return;
      case ChainDrive::Cosine:
        apply_cosine(cosine_envelope(cfg_.omega1, cfg_.omega2, n), psi);
        return;
    }
  }

  // dense reference gate (independent eigensolver route, small L)
  Matrix gate_dense(std::int64_t n) const {
    auto [h0, h1] = ising_hamiltonians(cfg_.L);
    switch (cfg_.drive) {
      case ChainDrive::Floquet:
        return exp_minus_i_hermitian(n % 2 == 0 ? h0 : h1);
      case ChainDrive::Fibonacci:
        return exp_minus_i_hermitian(
            fibonacci_selector(cfg_.omega1, cfg_.omega2, n) ? h1 : h0);
      case ChainDrive::Cosine: {
        const double x = cosine_envelope(cfg_.omega1, cfg_.omega2, n);
        return exp_minus_i_hermitian((1.0 - x) * h0 + x * h1);
      }
    }
    throw ArgumentError("unreachable");
  }

 private:
  void apply_g1(Vector& psi) const { psi.array() *= phase1_.array(); }

  void apply_g0(Vector& psi) const {
    fwht(psi);
    psi.array() *= phase1_.array();
    fwht(psi);
    psi *= scale_;
  }

  // y = H_x v / radius
  void matvec(double x, const Vector& v, Vector& y) const {
    tmp_c_ = v;
    fwht(tmp_c_);
    tmp_c_.array() *= diag_.array();
    fwht(tmp_c_);
    y.array() = ((1.0 - x) * scale_) * tmp_c_.array() +
                x * diag_.array() * v.array();
    y /= radius_;
  }

  void apply_cosine(double x, Vector& psi) const {
    // Chebyshev recurrence T_{k+1} = 2 (H/a) T_k - T_{k-1}
    tmp_a_ = psi;                 // T_0 v
    matvec(x, psi, tmp_b_);       // T_1 v
    Vector acc = cheb_[0] * tmp_a_ + cheb_[1] * tmp_b_;
    for (std::size_t k = 2; k < cheb_.size(); ++k) {
      matvec(x, tmp_b_, tmp_d_);
      tmp_a_ = 2.0 * tmp_d_ - tmp_a_;
      tmp_a_.swap(tmp_b_);
      acc += cheb_[k] * tmp_b_;
    }
    psi = acc;
  }

  ChainConfig cfg_;
  RealVector diag_;
  Vector phase1_;
  double scale_ = 1.0;
  double radius_ = 1.0;
  std::vector<Complex> cheb_;
  mutable Vector tmp_a_, tmp_b_, tmp_c_, tmp_d_;
};

}  // namespace

std::vector<ChainMoments> run_chain_moments(
    const ChainConfig& cfg, std::vector<std::int64_t> checkpoints,
    bool with_second) {
  cfg.validate();
  checkpoints.push_back(cfg.T_opt);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());

  const std::int64_t dim = ipow(2, cfg.L);
  ChainEvolver ev(cfg);
  PauliExpectationTable table(cfg.L, kbody_basis(cfg.L, cfg.K));
  const int nS = table.size();

  Vector psi = Vector::Zero(dim);
  psi(0) = 1.0;
  Eigen::VectorXd sum1 = Eigen::VectorXd::Zero(nS);
  Eigen::MatrixXd sum2 =
      with_second ? Eigen::MatrixXd::Zero(nS, nS) : Eigen::MatrixXd();

  std::vector<ChainMoments> out;
  std::size_t next = 0;
  const std::int64_t T = checkpoints.back();
  for (std::int64_t t = 0; t < T; ++t) {
    Eigen::VectorXd e = table.expectations(psi);
    sum1 += e;
    if (with_second)
      sum2.selfadjointView<Eigen::Lower>().rankUpdate(e, 1.0);
    while (next < checkpoints.size() && t + 1 == checkpoints[next]) {
      ChainMoments m;
      m.T = checkpoints[next];
      m.first = sum1 / static_cast<double>(m.T);
      if (with_second)
        m.second = Eigen::MatrixXd(sum2.selfadjointView<Eigen::Lower>()) /
                   static_cast<double>(m.T);
      out.push_back(std::move(m));
      ++next;
    }
    ev.apply_gate(t + 1, psi);
  }
  return out;
}

ObservableCoefficients optimize_observable(const ChainMoments& moments,
                                           int order, int L) {
  const double dinv = 1.0 / static_cast<double>(ipow(2, L));
  ObservableCoefficients obs;
  obs.order = order;
  if (order == 1) {
    // Haar averages vanish for traceless strings.
    obs.j1 = moments.first;
    obs.normalization = obs.j1.norm();
  } else if (order == 2) {
    if (moments.second.size() == 0)
      throw ArgumentError("second moments were not accumulated");
    const double haar_diag = 1.0 / (1.0 / dinv + 1.0);  // 1/(d+1)
    Eigen::MatrixXd j2 = moments.second;
    j2.diagonal().array() -= haar_diag;
    obs.j2 = j2;
    obs.normalization = std::sqrt(j2.squaredNorm());
  } else {
    throw ArgumentError("order must be 1 or 2");
  }
  obs.degenerate = obs.normalization < 1e-14;
  return obs;
}

double delta_value(const ObservableCoefficients& obs,
                   const ChainMoments& moments, int L) {
  if (obs.degenerate) return 0.0;
  const double d = static_cast<double>(ipow(2, L));
  if (obs.order == 1) return obs.j1.dot(moments.first) / obs.normalization;
  Eigen::MatrixXd dev = moments.second;
  dev.diagonal().array() -= 1.0 / (d + 1.0);
  return (obs.j2.array() * dev.array()).sum() / obs.normalization;
}

DeltaSeries delta_series(const ChainConfig& cfg, int order,
                         const std::vector<std::int64_t>& checkpoints) {
  auto both = delta_series_both_orders(cfg, checkpoints);
  return order == 1 ? both.first : both.second;
}

std::pair<DeltaSeries, DeltaSeries> delta_series_both_orders(
    const ChainConfig& cfg, const std::vector<std::int64_t>& checkpoints) {
  auto moments = run_chain_moments(cfg, checkpoints, /*with_second=*/true);
  const ChainMoments* at_opt = nullptr;
  for (const auto& m : moments)
    if (m.T == cfg.T_opt) at_opt = &m;
  auto obs1 = optimize_observable(*at_opt, 1, cfg.L);
  auto obs2 = optimize_observable(*at_opt, 2, cfg.L);

  DeltaSeries s1, s2;
  s1.cfg = s2.cfg = cfg;
  s1.order = 1;
  s2.order = 2;
  s1.optimized_value = obs1.normalization;
  s2.optimized_value = obs2.normalization;
  for (const auto& m : moments) {
    if (std::find(checkpoints.begin(), checkpoints.end(), m.T) ==
            checkpoints.end() &&
        m.T != cfg.T_opt)
      continue;
    DeltaPoint p1{m.T, delta_value(obs1, m, cfg.L), m.T < cfg.T_opt};
    DeltaPoint p2{m.T, delta_value(obs2, m, cfg.L), m.T < cfg.T_opt};
    s1.points.push_back(p1);
    s2.points.push_back(p2);
  }
  return {s1, s2};
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  if (x.size() > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss += r * r;
    }
    fit.slope_stderr = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
  }
  return fit;
}

ScalingSweep scaling_sweep(const std::vector<int>& orders,
                           const std::vector<int>& l_range,
                           const std::vector<int>& k_range,
                           const std::vector<ChainDrive>& drives,
                           std::int64_t T_opt, std::int64_t T_max) {
  ScalingSweep sweep;
  for (ChainDrive drive : drives)
    for (int K : k_range)
      for (int L : l_range) {
        if (K > L) continue;
        ChainConfig cfg;
        cfg.L = L;
        cfg.K = K;
        cfg.drive = drive;
        cfg.T_opt = T_opt;
        cfg.T_max = T_max;
        auto series = delta_series_both_orders(cfg, {T_opt, T_max});
        for (int order : orders) {
          const auto& s = order == 1 ? series.first : series.second;
          sweep.rows.push_back(
              {drive, L, K, order, T_max, s.points.back().delta});
        }
      }
  // log-linear fits of plateau magnitude against L
  for (ChainDrive drive : drives)
    for (int K : k_range)
      for (int order : orders) {
        std::vector<double> xs, ys;
        for (const auto& r : sweep.rows)
          if (r.drive == drive && r.K == K && r.order == order &&
              std::abs(r.delta) > 0) {
            xs.push_back(r.L);
            ys.push_back(std::log10(std::abs(r.delta)));
          }
        if (xs.size() >= 2) {
          sweep.fits.emplace_back(
              to_string(drive) + ",K=" + std::to_string(K) +
                  ",order=" + std::to_string(order),
              fit_line(xs, ys));
        }
      }
  return sweep;
}

ChainMoments dense_reference_moments(const ChainConfig& cfg, std::int64_t T,
                                     const std::vector<PauliString>& basis) {
  cfg.validate();
  if (cfg.L > 3) throw SizeCapError("dense reference limited to L <= 3");
  const std::int64_t dim = ipow(2, cfg.L);
  ChainEvolver ev(cfg);
  Vector psi = Vector::Zero(dim);
  psi(0) = 1.0;
  Matrix rho1 = Matrix::Zero(dim, dim);
  Matrix rho2 = Matrix::Zero(dim * dim, dim * dim);
  for (std::int64_t t = 0; t < T; ++t) {
    Matrix p = psi * psi.adjoint();
    rho1 += p;
    rho2 += kron(p, p);
    psi = ev.gate_dense(t + 1) * psi;  // eigensolver route, not the fast path
  }
  rho1 /= static_cast<double>(T);
  rho2 /= static_cast<double>(T);

  ChainMoments m;
  m.T = T;
  const int nS = static_cast<int>(basis.size());
  m.first.resize(nS);
  std::vector<Matrix> mats;
  mats.reserve(nS);
  for (const auto& s : basis) mats.push_back(pauli_matrix(s));
  for (int i = 0; i < nS; ++i)
    m.first(i) = (mats[i] * rho1).trace().real();
  m.second.resize(nS, nS);
  for (int i = 0; i < nS; ++i)
    for (int j = 0; j < nS; ++j)
      m.second(i, j) = (kron(mats[i], mats[j]) * rho2).trace().real();
  return m;
}

void write_delta_csv(const std::string& path,
                     const std::vector<DeltaSeries>& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "drive,L,K,order,T,delta\n";
  out.precision(17);
  for (const auto& s : series)
    for (const auto& p : s.points)
      out << to_string(s.cfg.drive) << ',' << s.cfg.L << ',' << s.cfg.K << ','
          << s.order << ',' << p.T << ',' << p.delta << '\n';
}

}  // namespace qerg
