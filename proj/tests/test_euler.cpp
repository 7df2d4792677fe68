#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qerg/ergodicity.hpp"
#include "qerg/euler.hpp"
#include "test_util.hpp"

using namespace qerg;
using namespace qerg::test;

TEST_CASE("rotation matrix: fixed angles and group properties") {
  CHECK(max_abs_diff(rotation_matrix(1, 0.0, 0.3, 0.0, 3),
                     Matrix::Identity(3, 3)) < 1e-15);

  Matrix quarter = rotation_matrix(1, kPi / 2.0, 0.0, 0.0, 2);
  Matrix expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK(max_abs_diff(quarter, expect) < 1e-15);

  Rng rng(3);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  for (int rep = 0; rep < 10; ++rep) {
    const int j = 1 + static_cast<int>(rng() % 4);
    Matrix r = rotation_matrix(j, uni(rng) / 4.0, uni(rng), uni(rng), 5);
    CHECK(is_unitary(r, 1e-12));
    CHECK(std::abs(Complex(r.determinant()) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS((void)rotation_matrix(5, 0.1, 0.1, 0.1, 5), ArgumentError);
}

TEST_CASE("hurwitz unitary: identity, qubit reduction, determinant") {
  for (int d : {2, 3, 4})
    CHECK(max_abs_diff(hurwitz_unitary(EulerAngles::zeros(d)),
                       Matrix::Identity(d, d)) < 1e-15);

  EulerAngles a = EulerAngles::zeros(2);
  a.xi_at(1, 1) = 0.7;
  a.phi_at(1, 1) = 1.9;
  a.eta[0] = 4.2;
  CHECK(max_abs_diff(hurwitz_unitary(a), rotation_matrix(1, 0.7, 1.9, 4.2, 2)) <
        1e-15);

  Rng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    EulerAngles b = sample_angles(4, rng);
    Matrix v = hurwitz_unitary(b);
    CHECK(is_unitary(v, 1e-12));
    CHECK(std::abs(Complex(v.determinant()) - 1.0) <= 1e-10);
  }
}

TEST_CASE("measure-preserving substitution: endpoints and pushforward") {
  CHECK(measure_preserving_xi(kPi, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(measure_preserving_xi(0.0, 1) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(measure_preserving_xi(0.0, 3) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));

  // r=1: sin²ξ(θ) over a uniform θ grid is uniform on [0,1]
  const int n = 1000000;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    const double theta = kTwoPi * (i + 0.5) / n;
    const double s = std::sin(measure_preserving_xi(theta, 1));
    vals[i] = s * s;
  }
  std::sort(vals.begin(), vals.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i)
    ks = std::max(ks, std::abs(vals[i] - (i + 0.5) / n));
  CHECK(ks < 2e-3);
}

TEST_CASE("pushforward check: moments match Haar for d=2 and d=3") {
  Rng rng(42);
  for (int d : {2, 3}) {
    auto rep = haar_pushforward_check(d, 100000, rng);
    CHECK(rep.first_moment_deviation < 5e-3);
    CHECK(std::abs(rep.frame_potential_k2 - 2.0) <=
          3.0 * rep.frame_potential_k2_stderr);
  }
}

TEST_CASE("pushforward deviation shrinks with sample count") {
  Rng rng(77);
  auto coarse = haar_pushforward_check(2, 2000, rng);
  auto fine = haar_pushforward_check(2, 50000, rng);
  // ~ N^{-1/2} scaling: a 25x sample ratio separates the deviations clearly
  CHECK(fine.first_moment_deviation < coarse.first_moment_deviation);
}

TEST_CASE("cue drive: identity at t=0 and quasienergy structure") {
  for (int d : {2, 3}) {
    auto [om, qs] = cue_default_frequencies(d);
    DriveSpec spec = cue_drive(d, om, qs);
    const auto& fd = spec.floquet();
    CHECK(fd.tones == d * d - 2);
    CHECK(max_abs_diff(fd.unitary_at(0.0), Matrix::Identity(d, d)) < 1e-10);

    // QE property: |<α(ωt)| U(t) |α(0)>| = 1
    for (int alpha = 0; alpha < d; ++alpha) {
      Vector alpha0 = fd.parent_unitary(RealVector::Zero(fd.tones)).col(alpha);
      for (double t : {0.9, 7.77, 31.4}) {
        RealVector theta(fd.tones);
        for (int i = 0; i < fd.tones; ++i)
          theta(i) = std::fmod(fd.omega(i) * t, kTwoPi);
        Vector at = fd.parent_unitary(theta).col(alpha);
        const Complex ov = at.adjoint() * (fd.unitary_at(t) * alpha0);
        CHECK(std::abs(std::abs(ov) - 1.0) < 1e-8);
      }
    }
  }
  auto [om, qs] = cue_default_frequencies(3);
  om.pop_back();
  CHECK_THROWS_AS((void)cue_drive(3, om, qs), ArgumentError);
}

TEST_CASE("cue drive d=3: long-time first moment and frame potential") {
  auto [om, qs] = cue_default_frequencies(3);
  DriveSpec spec = cue_drive(3, om, qs);
  const std::int64_t T = 100000;
  auto acc = accumulate_unitary_moment(spec, T, 1);
  CHECK(unitary_deviation(acc) < 1e-2);
  CHECK(std::abs(frame_potential_from_moment(acc.mean()) - 1.0) < 1e-2);
}

TEST_CASE("cue drive JSON round trip") {
  auto [om, qs] = cue_default_frequencies(3);
  DriveSpec spec = cue_drive(3, om, qs);
  DriveSpec back = drive_from_json(drive_to_json(spec));
  for (double t : {0.0, 1.7, 23.9})
    CHECK(max_abs_diff(spec.floquet().unitary_at(t),
                       back.floquet().unitary_at(t)) < 1e-12);
}

TEST_CASE("cue drive d=2: temporal moments converge with slope <= -1/2") {
  auto [om, qs] = cue_default_frequencies(2);
  DriveSpec spec = cue_drive(2, om, qs);
  Vector psi0 = Vector::Zero(2);
  psi0(0) = 1.0;
  Rng rng(5);
  auto series = state_convergence_series(
      spec, {1000, 10000, 100000, 1000000}, 2, psi0, 2000, rng);
  CHECK(loglog_slope(series) <= -0.5);
  CHECK(series.back().deviation < 1e-2);
}
