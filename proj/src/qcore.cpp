#include "qerg/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace qerg {

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b, std::int64_t cap) {
  check_entry_cap(a.rows() * b.rows(), a.cols() * b.cols(), cap);
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b, std::int64_t cap) {
  check_entry_cap(a.size() * b.size(), 1, cap);
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector kron_power(const Vector& v, int k, std::int64_t cap) {
  Vector out = Vector::Ones(1);
  for (int i = 0; i < k; ++i) out = kron(out, v, cap);
  return out;
}

Matrix kron_power(const Matrix& m, int k, std::int64_t cap) {
  Matrix out = Matrix::Ones(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, m, cap);
  return out;
}

Matrix permutation_operator(const std::vector<int>& pi, int d,
                            std::int64_t cap) {
  const int k = static_cast<int>(pi.size());
  std::vector<char> seen(k, 0);
  for (int x : pi) {
    if (x < 0 || x >= k || seen[x]) throw ArgumentError("invalid permutation");
    seen[x] = 1;
  }
  const std::int64_t dim = ipow(d, k);
  check_entry_cap(dim, dim, cap);
  Matrix V = Matrix::Zero(dim, dim);
  std::vector<int> idx(k), out(k);
  for (std::int64_t col = 0; col < dim; ++col) {
    std::int64_t rest = col;
    for (int j = k - 1; j >= 0; --j) {
      idx[j] = static_cast<int>(rest % d);
      rest /= d;
    }
    // column |i_1..i_k> maps to |j_1..j_k> with j_{pi(l)} = i_l, so that
    // factor l of the input lands in slot pi(l).
    for (int l = 0; l < k; ++l) out[pi[l]] = idx[l];
    std::int64_t row = 0;
    for (int j = 0; j < k; ++j) row = row * d + out[j];
    V(row, col) = 1.0;
  }
  return V;
}

std::int64_t symmetric_dimension(int d, int k) {
  // binom(d+k-1, k) with small arguments; exact in integer arithmetic.
  std::int64_t num = 1, den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= d - 1 + i;
    den *= i;
  }
  return num / den;
}

Matrix symmetric_projector(int d, int k, std::int64_t cap) {
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (k > 10) throw SizeCapError("permutation enumeration capped at k <= 10");
  const std::int64_t dim = ipow(d, k);
  check_entry_cap(dim, dim, cap);
  std::vector<int> pi(k);
  for (int i = 0; i < k; ++i) pi[i] = i;
  Matrix acc = Matrix::Zero(dim, dim);
  std::int64_t nperm = 0;
  do {
    acc += permutation_operator(pi, d, cap);
    ++nperm;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return acc / static_cast<double>(nperm);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw ArgumentError("trace_distance: dimension mismatch");
  if (!is_hermitian(rho) || !is_hermitian(sigma))
    throw ArgumentError("trace_distance: inputs must be Hermitian");
  Matrix diff = rho - sigma;
  diff = Matrix((diff + diff.adjoint()) / 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Vector& psi, const Vector& phi) {
  const double ov = std::norm(Complex(psi.adjoint() * phi));
  return std::sqrt(std::max(0.0, 1.0 - ov));
}

Matrix haar_random_unitary(int d, Rng& rng) {
  if (d < 1) throw ArgumentError("dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the QR phase ambiguity: make diag(R) real positive, else the
  // distribution is not Haar.
  for (int i = 0; i < d; ++i) {
    Complex z = r(i, i);
    q.col(i) *= z / std::abs(z);
  }
  return q;
}

Vector haar_random_state(int d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

Matrix matrix_log_principal(const Matrix& u) {
  if (!is_unitary(u))
    throw ArgumentError("matrix_log_principal: input is not unitary");
  const int d = static_cast<int>(u.rows());
  // A unitary is normal, so its Schur form is diagonal; the Schur basis is an
  // orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  RealVector h(d);
  for (int i = 0; i < d; ++i) {
    double phase = -std::arg(schur.matrixT()(i, i));  // e^{-ih} = λ
    if (phase <= -kPi) phase = kPi;                   // branch cut -> +π
    h(i) = phase;
  }
  Matrix H = q * h.asDiagonal() * q.adjoint();
  return Matrix((H + H.adjoint()) / 2.0);
}

double operator_norm(const Matrix& a) {
  if (is_hermitian(a, 1e-10)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Matrix((a + a.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix exp_minus_i_hermitian(const Matrix& h, double t) {
  if (!is_hermitian(h))
    throw ArgumentError("exp_minus_i_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((h + h.adjoint()) / 2.0));
  Vector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

int PauliString::weight() const {
  int w = 0;
  for (char c : letters)
    if (c != 'I') ++w;
  return w;
}

Matrix pauli_1q(char letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ArgumentError("unknown Pauli letter");
  }
  return m;
}

Matrix pauli_matrix(const PauliString& s, std::int64_t cap) {
  if (static_cast<int>(s.letters.size()) != s.length)
    throw ArgumentError("PauliString length mismatch");
  Matrix out = Matrix::Ones(1, 1);
  for (char c : s.letters) out = kron(out, pauli_1q(c), cap);
  return out;
}

}  // namespace qerg
