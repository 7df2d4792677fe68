#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qerg/drives.hpp"
#include "qerg/spinchain.hpp"
#include "test_util.hpp"

using namespace qerg;
using namespace qerg::test;

TEST_CASE("ising hamiltonians: L=2 hand assembly") {
  auto [h0, h1] = ising_hamiltonians(2);
  Matrix x = pauli_1q('X'), z = pauli_1q('Z'), id = Matrix::Identity(2, 2);
  Matrix expect = kron(x, id) + kron(id, x) + kron(x, x) + 0.1 * kron(x, id);
  CHECK(max_abs_diff(h0, expect) < 1e-14);
  Matrix expect1 = kron(z, id) + kron(id, z) + kron(z, z) + 0.1 * kron(z, id);
  CHECK(max_abs_diff(h1, expect1) < 1e-14);

  Eigen::SelfAdjointEigenSolver<Matrix> es(h0);
  Eigen::SelfAdjointEigenSolver<Matrix> ed(expect);
  CHECK((es.eigenvalues() - ed.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ising hamiltonians: boundary term breaks reflection") {
  auto [h0, h1] = ising_hamiltonians(3);
  // site reflection permutation on 3 qubits
  Matrix r = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    const int b0 = (i >> 2) & 1, b1 = (i >> 1) & 1, b2 = i & 1;
    r((b2 << 2) | (b1 << 1) | b0, i) = 1.0;
  }
  CHECK(max_abs_diff(Matrix(r * h0 * r), h0) > 0.05);
}

TEST_CASE("ising hamiltonians: spectra related by global basis change") {
  auto [h0, h1] = ising_hamiltonians(3);
  Eigen::SelfAdjointEigenSolver<Matrix> e0(h0), e1(h1);
  CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  // explicit Hadamard conjugation
  Matrix had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  Matrix hadL = kron(kron(had, had), had);
  CHECK(max_abs_diff(Matrix(hadL * h1 * hadL), h0) < 1e-12);
}

TEST_CASE("kbody basis: counts, tracelessness, determinism") {
  auto b11 = kbody_basis(1, 1);
  REQUIRE(b11.size() == 3);
  CHECK(b11[0].letters == "X");
  CHECK(b11[1].letters == "Y");
  CHECK(b11[2].letters == "Z");

  auto b22 = kbody_basis(2, 2);
  CHECK(b22.size() == 15);  // 6 weight-1 + 9 weight-2
  for (const auto& s : b22) {
    CHECK(s.weight() >= 1);
    CHECK(std::abs(pauli_matrix(s).trace()) < 1e-14);
  }
  auto again = kbody_basis(2, 2);
  for (std::size_t i = 0; i < b22.size(); ++i)
    CHECK(b22[i].letters == again[i].letters);

  CHECK(kbody_basis(6, 2).size() == 18 + 135);
}

TEST_CASE("pauli expectation table agrees with dense realization") {
  Rng rng(5);
  const int L = 3;
  auto basis = kbody_basis(L, 3);
  PauliExpectationTable table(L, basis);
  Vector psi = haar_random_state(8, rng);
  Eigen::VectorXd fast = table.expectations(psi);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double dense = table.expectation_dense(basis[i], psi);
    CHECK(std::abs(fast(static_cast<int>(i)) - dense) < 1e-12);
  }
}

TEST_CASE("optimize observable: degenerate and single-component moments") {
  const int L = 2;
  auto basis = kbody_basis(L, 2);
  ChainMoments flat;
  flat.T = 10;
  flat.first = Eigen::VectorXd::Zero(basis.size());
  auto obs = optimize_observable(flat, 1, L);
  CHECK(obs.degenerate);
  CHECK(delta_value(obs, flat, L) == 0.0);

  ChainMoments single = flat;
  single.first(2) = 0.25;  // lone <Z_1> component
  auto obs1 = optimize_observable(single, 1, L);
  CHECK(!obs1.degenerate);
  CHECK(obs1.j1(2) == doctest::Approx(0.25));
  for (int i = 0; i < obs1.j1.size(); ++i)
    if (i != 2) CHECK(obs1.j1(i) == 0.0);
  CHECK(delta_value(obs1, single, L) ==
        doctest::Approx(obs1.normalization).epsilon(1e-12));
}

TEST_CASE("optimize observable: unit thermal fluctuations by construction") {
  // reconstruct O densely and verify (tr O² - (tr O)²)/d^order = 1
  ChainConfig cfg;
  cfg.L = 2;
  cfg.K = 2;
  cfg.drive = ChainDrive::Floquet;
  cfg.T_opt = 50;
  cfg.T_max = 50;
  auto moments = run_chain_moments(cfg, {50}, true);
  auto basis = kbody_basis(2, 2);
  const double d = 4.0;

  auto obs1 = optimize_observable(moments.back(), 1, 2);
  Matrix o1 = Matrix::Zero(4, 4);
  for (std::size_t i = 0; i < basis.size(); ++i)
    o1 += obs1.j1(static_cast<int>(i)) * pauli_matrix(basis[i]);
  o1 /= obs1.normalization;
  const double fluct1 =
      ((o1 * o1).trace().real() - std::norm(o1.trace())) / d;
  CHECK(fluct1 == doctest::Approx(1.0).epsilon(1e-10));

  auto obs2 = optimize_observable(moments.back(), 2, 2);
  Matrix o2 = Matrix::Zero(16, 16);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      o2 += obs2.j2(static_cast<int>(i), static_cast<int>(j)) *
            kron(pauli_matrix(basis[i]), pauli_matrix(basis[j]));
  o2 /= obs2.normalization;
  const double fluct2 =
      ((o2 * o2).trace().real() - std::norm(o2.trace())) / (d * d);
  CHECK(fluct2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("delta series: small-chain sanity for all three drives") {
  for (ChainDrive drive :
       {ChainDrive::Floquet, ChainDrive::Cosine, ChainDrive::Fibonacci}) {
    ChainConfig cfg;
    cfg.L = 2;
    cfg.K = 2;
    cfg.drive = drive;
    cfg.T_opt = 1000;
    cfg.T_max = 1000;
    auto series = delta_series(cfg, 1, {1000});
    REQUIRE(series.points.size() == 1);
    CHECK(std::abs(series.points[0].delta) > 0.0);
    CHECK(series.points[0].delta ==
          doctest::Approx(series.optimized_value).epsilon(1e-10));
  }
}

TEST_CASE("delta series: checkpoints below T_opt are flagged") {
  ChainConfig cfg;
  cfg.L = 2;
  cfg.K = 1;
  cfg.T_opt = 200;
  cfg.T_max = 400;
  auto series = delta_series(cfg, 1, {100, 200, 400});
  REQUIRE(series.points.size() == 3);
  CHECK(series.points[0].pre_optimization);
  CHECK(!series.points[1].pre_optimization);
  CHECK(!series.points[2].pre_optimization);
}

TEST_CASE("pauli accumulators equal the dense-replica path on L <= 3") {
  for (ChainDrive drive : {ChainDrive::Floquet, ChainDrive::Fibonacci}) {
    ChainConfig cfg;
    cfg.L = 3;
    cfg.K = 2;
    cfg.drive = drive;
    cfg.T_opt = 64;
    cfg.T_max = 64;
    auto basis = kbody_basis(cfg.L, cfg.K);
    auto fast = run_chain_moments(cfg, {64}, true).back();
    auto dense = dense_reference_moments(cfg, 64, basis);
    CHECK((fast.first - dense.first).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((fast.second - dense.second).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("delta is invariant under basis relabeling") {
  ChainConfig cfg;
  cfg.L = 2;
  cfg.K = 2;
  cfg.drive = ChainDrive::Floquet;
  cfg.T_opt = 100;
  cfg.T_max = 300;
  auto moments = run_chain_moments(cfg, {100, 300}, true);
  auto obs1 = optimize_observable(moments[0], 1, cfg.L);
  const double delta = delta_value(obs1, moments[1], cfg.L);

  // relabel: reverse the basis order in both the coefficients and moments
  ChainMoments rev0 = moments[0], rev1 = moments[1];
  rev0.first = moments[0].first.reverse();
  rev1.first = moments[1].first.reverse();
  auto obs_rev = optimize_observable(rev0, 1, cfg.L);
  CHECK(delta_value(obs_rev, rev1, cfg.L) ==
        doctest::Approx(delta).epsilon(1e-12));
}

TEST_CASE("floquet drive: period-two power identity at n = 32") {
  auto [h0, h1] = ising_hamiltonians(2);
  DriveSpec spec = floquet_kick_drive(h0, h1);
  Matrix period = exp_minus_i_hermitian(h0) * exp_minus_i_hermitian(h1);
  Matrix power = Matrix::Identity(4, 4);
  for (int n = 0; n < 32; ++n) power = period * power;
  CHECK(max_abs_diff(evolve(spec, {64.0}).unitaries[0], power) < 1e-10);
}

TEST_CASE("chain evolution stays unitary over a thousand kicks") {
  auto [h0, h1] = ising_hamiltonians(2);
  DriveSpec spec = floquet_kick_drive(h0, h1);
  auto trace = evolve(spec, {1000.0});
  Matrix g = trace.unitaries[0].adjoint() * trace.unitaries[0];
  g.diagonal().array() -= 1.0;
  CHECK(g.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("scaling sweep: table shape and fit plumbing") {
  ScalingSweep sweep = scaling_sweep({1}, {2, 3}, {1}, {ChainDrive::Floquet},
                                     100, 1000);
  CHECK(sweep.rows.size() == 2);
  REQUIRE(sweep.fits.size() == 1);
  CHECK(sweep.fits[0].first == "floquet,K=1,order=1");

  LinearFit fit = fit_line({1, 2, 3, 4}, {2, 4, 6, 8});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("fast kick application matches the dense gates at L = 5") {
  // exercises the Walsh/Chebyshev path against the eigensolver route
  for (ChainDrive drive :
       {ChainDrive::Floquet, ChainDrive::Cosine, ChainDrive::Fibonacci}) {
    ChainConfig cfg;
    cfg.L = 5;
    cfg.K = 1;
    cfg.drive = drive;
    cfg.T_opt = 16;
    cfg.T_max = 16;
    auto basis = kbody_basis(cfg.L, cfg.K);
    auto fast = run_chain_moments(cfg, {16}, false).back();

    // dense evolution with per-step eigendecomposition
    auto [h0, h1] = ising_hamiltonians(cfg.L);
    Vector psi = Vector::Zero(32);
    psi(0) = 1.0;
    PauliExpectationTable table(cfg.L, basis);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.size());
    for (int t = 0; t < 16; ++t) {
      sum += table.expectations(psi);
      const std::int64_t n = t + 1;
      Matrix h;
      if (drive == ChainDrive::Floquet)
        h = n % 2 == 0 ? h0 : h1;
      else if (drive == ChainDrive::Fibonacci)
        h = fibonacci_selector(cfg.omega1, cfg.omega2, n) ? h1 : h0;
      else {
        const double x = cosine_envelope(cfg.omega1, cfg.omega2, n);
        h = (1.0 - x) * h0 + x * h1;
      }
      psi = exp_minus_i_hermitian(h) * psi;
    }
    CHECK((fast.first - sum / 16.0).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("config validation") {
  ChainConfig bad;
  bad.L = 1;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  ChainConfig badk;
  badk.L = 4;
  badk.K = 5;
  CHECK_THROWS_AS(badk.validate(), ArgumentError);
}
