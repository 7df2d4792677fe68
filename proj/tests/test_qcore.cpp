#include <doctest.h>

#include <numeric>

#include "qerg/haar.hpp"
#include "qerg/qcore.hpp"
#include "test_util.hpp"

using namespace qerg;
using namespace qerg::test;

TEST_CASE("kron: identities and bit flips") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(kron(i2, i2), Matrix::Identity(4, 4)) == 0.0);

  Matrix x = pauli_1q('X');
  Vector v00 = Vector::Zero(4);
  v00(0) = 1.0;
  Vector v11 = kron(x, x) * v00;
  CHECK(std::abs(v11(3) - 1.0) < 1e-15);
  CHECK(v11.head(3).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kron: mixed-product identity on random factors") {
  Rng rng(101);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = random_matrix(2, rng), b = random_matrix(2, rng);
    Matrix c = random_matrix(2, rng), d = random_matrix(2, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d),
                       kron(Matrix(a * c), Matrix(b * d))) <= 1e-12);
  }
}

TEST_CASE("kron: size cap is enforced") {
  Matrix big = Matrix::Zero(1 << 13, 1 << 13);
  CHECK_THROWS_AS((void)kron(big, big), SizeCapError);
}

TEST_CASE("permutation operator: identity and swap") {
  std::vector<int> id{0, 1, 2};
  CHECK(max_abs_diff(permutation_operator(id, 2), Matrix::Identity(8, 8)) ==
        0.0);
  std::vector<int> swap{1, 0};
  CHECK(max_abs_diff(permutation_operator(swap, 2), swap_gate()) == 0.0);
}

TEST_CASE("permutation operator: action on product vectors") {
  Rng rng(7);
  const int d = 3, k = 3;
  std::vector<Vector> psi;
  for (int j = 0; j < k; ++j) psi.push_back(haar_random_state(d, rng));
  std::vector<int> pi{2, 0, 1};  // factor j lands in slot pi[j]
  Vector in = kron(kron(psi[0], psi[1]), psi[2]);
  std::vector<Vector> out_factors(k);
  for (int j = 0; j < k; ++j) out_factors[pi[j]] = psi[j];
  Vector expect = kron(kron(out_factors[0], out_factors[1]), out_factors[2]);
  CHECK(max_abs_diff(permutation_operator(pi, d) * in, expect) < 1e-14);
}

TEST_CASE("permutation operator: composition is exact") {
  Rng rng(11);
  std::vector<int> pis[6] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::uniform_int_distribution<int> pick(0, 5);
  for (int rep = 0; rep < 10; ++rep) {
    auto pi = pis[pick(rng)];
    auto sigma = pis[pick(rng)];
    // V_pi V_sigma = V_{pi ∘ sigma} with (pi ∘ sigma)[j] = pi[sigma[j]]
    std::vector<int> comp(3);
    for (int j = 0; j < 3; ++j) comp[j] = pi[sigma[j]];
    Matrix lhs = permutation_operator(pi, 2) * permutation_operator(sigma, 2);
    CHECK(max_abs_diff(lhs, permutation_operator(comp, 2)) == 0.0);
  }
  CHECK_THROWS_AS((void)permutation_operator({0, 0, 1}, 2), ArgumentError);
}

TEST_CASE("symmetric projector: small cases") {
  CHECK(max_abs_diff(symmetric_projector(3, 1), Matrix::Identity(3, 3)) ==
        0.0);
  Matrix p22 = symmetric_projector(2, 2);
  CHECK(max_abs_diff(p22, (Matrix::Identity(4, 4) + swap_gate()) / 2.0) <
        1e-15);
  CHECK(p22.trace().real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(symmetric_projector(3, 2).trace().real() ==
        doctest::Approx(6.0).epsilon(1e-14));
  CHECK(symmetric_dimension(3, 2) == 6);
}

TEST_CASE("symmetric projector: idempotent, Hermitian, commutes with U^k") {
  Rng rng(23);
  for (auto [d, k] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 4}}) {
    Matrix p = symmetric_projector(d, k);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
    CHECK(max_abs_diff(p, p.adjoint()) < 1e-12);
    Matrix u = haar_random_unitary(d, rng);
    Matrix uk = kron_power(u, k);
    CHECK(max_abs_diff(p * uk, uk * p) < 1e-10);
  }
}

TEST_CASE("trace distance: pure-state cases and route agreement") {
  Rng rng(3);
  Matrix rho = random_density(3, rng);
  CHECK(trace_distance(rho, rho) == 0.0);

  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(trace_distance(e0, e1) == doctest::Approx(1.0).epsilon(1e-14));

  Vector plus = (e0 + e1) / std::sqrt(2.0);
  const double by_overlap = trace_distance(e0, plus);
  const double by_eigs =
      trace_distance(Matrix(e0 * e0.adjoint()), Matrix(plus * plus.adjoint()));
  CHECK(std::abs(by_overlap - by_eigs) < 1e-12);
  CHECK(by_overlap == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("trace distance: metric on random density triples") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix a = random_density(3, rng), b = random_density(3, rng),
           c = random_density(3, rng);
    const double ab = trace_distance(a, b), bc = trace_distance(b, c),
                 ac = trace_distance(a, c);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(std::abs(ab - trace_distance(b, a)) < 1e-14);
  }
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS((void)trace_distance(nonherm, Matrix::Identity(2, 2)),
                  ArgumentError);
}

TEST_CASE("haar unitary: unitarity and first-moment twirl") {
  Rng rng(5);
  for (int d : {2, 3, 5}) {
    Matrix u = haar_random_unitary(d, rng);
    CHECK(is_unitary(u, 1e-10));
  }

  // E[V ⊗ conj(V)] reshuffles to SWAP/d: check the partial transpose of the
  // empirical channel mean against SWAP/2 entrywise.
  const std::int64_t N = 100000;
  Matrix mean = Matrix::Zero(4, 4);
  for (std::int64_t i = 0; i < N; ++i) {
    Matrix v = haar_random_unitary(2, rng);
    mean += kron(v.conjugate(), v);
  }
  mean /= static_cast<double>(N);
  Matrix pt(4, 4);  // partial transpose on the second factor
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
          pt(a * 2 + b, c * 2 + e) = mean(a * 2 + e, c * 2 + b);
  CHECK(max_abs_diff(pt, swap_gate() / 2.0) < 5e-3);
}

TEST_CASE("haar unitary: k=1 frame potential at d=3") {
  Rng rng(17);
  const std::int64_t N = 100000;
  double acc = 0.0;
  for (std::int64_t i = 0; i < N; ++i)
    acc += std::norm(haar_random_unitary(3, rng).trace());
  CHECK(acc / N == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("haar unitary: left-invariance of the first moment") {
  Rng rng(29);
  Matrix w = haar_random_unitary(2, rng);
  const std::int64_t N = 100000;
  Matrix mean_v = Matrix::Zero(2, 2), mean_wv = Matrix::Zero(2, 2);
  for (std::int64_t i = 0; i < N; ++i) {
    Matrix v = haar_random_unitary(2, rng);
    mean_v += v;
    mean_wv += w * haar_random_unitary(2, rng);
  }
  CHECK(max_abs_diff(mean_v / double(N), mean_wv / double(N)) < 5e-3);
}

TEST_CASE("matrix log principal: fixed points and branch cut") {
  Matrix zero = matrix_log_principal(Matrix::Identity(3, 3));
  CHECK(zero.cwiseAbs().maxCoeff() < 1e-12);

  Matrix z = pauli_1q('Z');  // diag(1, -1)
  Matrix h = matrix_log_principal(z);
  CHECK(std::abs(h(0, 0).real() - 0.0) < 1e-12);
  CHECK(std::abs(h(1, 1).real() - kPi) < 1e-12);  // -π resolves to +π
  CHECK(operator_norm(h) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("matrix log principal: round trip and norm bound") {
  Rng rng(41);
  for (int rep = 0; rep < 8; ++rep) {
    Matrix u = haar_random_unitary(4, rng);
    Matrix h = matrix_log_principal(u);
    CHECK(is_hermitian(h, 1e-12));
    CHECK(operator_norm(h) <= kPi + 1e-12);
    CHECK(max_abs_diff(exp_minus_i_hermitian(h), u) < 1e-10);
  }
  Matrix notu = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS((void)matrix_log_principal(notu), ArgumentError);
}

TEST_CASE("pauli strings: realization and trace orthogonality") {
  CHECK(max_abs_diff(pauli_matrix({2, "II"}), Matrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs_diff(pauli_matrix({2, "XI"}),
                     kron(pauli_1q('X'), Matrix::Identity(2, 2))) == 0.0);

  PauliString a{4, "XIYI"}, b{4, "XIYI"}, c{4, "IZYX"};
  CHECK(a.weight() == 2);
  Matrix ma = pauli_matrix(a);
  CHECK(is_hermitian(ma, 1e-14));
  CHECK(is_unitary(ma, 1e-14));
  CHECK(max_abs_diff(ma * ma, Matrix::Identity(16, 16)) < 1e-14);
  CHECK((pauli_matrix(a) * pauli_matrix(b)).trace().real() ==
        doctest::Approx(16.0));
  CHECK(std::abs((pauli_matrix(a) * pauli_matrix(c)).trace()) < 1e-14);
}
