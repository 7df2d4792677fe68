#include "qerg/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qerg/parallel.hpp"

namespace qerg {

Matrix haar_state_moment(int d, int k, std::int64_t cap) {
  return symmetric_projector(d, k, cap) * haar_state_frame_potential(d, k);
}

double haar_state_frame_potential(int d, int k) {
  if (d < 2 || k < 1) throw ArgumentError("require d >= 2, k >= 1");
  return std::exp(std::lgamma(d) + std::lgamma(k + 1.0) - std::lgamma(d + k));
}

namespace {

int longest_increasing_subsequence(const std::vector<int>& p) {
  std::vector<int> tails;
  for (int x : p) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end())
      tails.push_back(x);
    else
      *it = x;
  }
  return static_cast<int>(tails.size());
}

}  // namespace

double haar_unitary_frame_potential(int d, int k) {
  if (d < 2 || k < 1) throw ArgumentError("require d >= 2, k >= 1");
  if (k <= d) return std::tgamma(k + 1.0);
  if (k > 10)
    throw SizeCapError("exact branch capped at k <= 10; use the MC oracle");
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::int64_t count = 0;
  do {
    if (longest_increasing_subsequence(p) <= d) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return static_cast<double>(count);
}

Matrix haar_unitary_first_moment(int d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a * d + a, b * d + b) = 1.0 / d;
  return m;
}

namespace {

Matrix channel_replica(const Matrix& u, int k, std::int64_t cap) {
  if (k == 0) return Matrix::Ones(1, 1);
  Matrix v = kron(u.conjugate(), u, cap);
  return kron_power(v, k, cap);
}

McMoment moment_mc_impl(int d, int k, std::int64_t n, Rng& rng, int workers,
                        std::int64_t cap, bool unitary_kind) {
  const std::int64_t dim = unitary_kind ? ipow(std::int64_t{d} * d, k)
                                        : ipow(d, std::max(k, 0));
  check_entry_cap(dim, dim, cap);
  auto chunks = make_chunks(n, workers, rng());
  std::vector<Matrix> sums(chunks.size(), Matrix::Zero(dim, dim));
  std::vector<Matrix> sqsums(chunks.size(), Matrix::Zero(dim, dim));
  run_chunks(
      chunks,
      [&](const Chunk& c, int ci) {
        Rng sub(c.seed);
        Matrix sum = Matrix::Zero(dim, dim);
        Matrix sq = Matrix::Zero(dim, dim);
        for (std::int64_t i = c.begin; i < c.end; ++i) {
          Matrix term;
          if (unitary_kind) {
            term = channel_replica(haar_random_unitary(d, sub), k, cap);
          } else {
            Vector rep = kron_power(haar_random_state(d, sub), k, cap);
            term = rep * rep.adjoint();
          }
          sum += term;
          sq += term.cwiseAbs2();
        }
        sums[ci] = sum;
        sqsums[ci] = sq;
      },
      workers);
  Matrix total = Matrix::Zero(dim, dim);
  Matrix totalsq = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    total += sums[i];
    totalsq += sqsums[i];
  }
  McMoment out;
  out.samples = n;
  out.mean = total / static_cast<double>(n);
  // per-entry variance of |entry| as a conservative scalar summary
  double max_se = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      double var = totalsq(i, j).real() / n - std::norm(out.mean(i, j));
      max_se = std::max(max_se, std::sqrt(std::max(0.0, var) / n));
    }
  out.max_stderr = max_se;
  return out;
}

}  // namespace

McMoment haar_unitary_moment_mc(int d, int k, std::int64_t n, Rng& rng,
                                int workers, std::int64_t cap) {
  if (k == 0) {
    McMoment out;
    out.mean = Matrix::Ones(1, 1);
    out.samples = n;
    return out;
  }
  return moment_mc_impl(d, k, n, rng, workers, cap, /*unitary_kind=*/true);
}

McMoment haar_state_moment_mc(int d, int k, std::int64_t n, Rng& rng,
                              int workers, std::int64_t cap) {
  return moment_mc_impl(d, k, n, rng, workers, cap, /*unitary_kind=*/false);
}

McScalar haar_unitary_frame_potential_mc(int d, int k, std::int64_t n_pairs,
                                         Rng& rng, int workers) {
  auto chunks = make_chunks(n_pairs, workers, rng());
  std::vector<double> sums(chunks.size(), 0.0), sqs(chunks.size(), 0.0);
  run_chunks(
      chunks,
      [&](const Chunk& c, int ci) {
        Rng sub(c.seed);
        double s = 0.0, s2 = 0.0;
        for (std::int64_t i = c.begin; i < c.end; ++i) {
          Matrix u = haar_random_unitary(d, sub);
          Matrix v = haar_random_unitary(d, sub);
          double x = std::pow(std::abs((u.adjoint() * v).trace()), 2 * k);
          s += x;
          s2 += x * x;
        }
        sums[ci] = s;
        sqs[ci] = s2;
      },
      workers);
  const double s = std::accumulate(sums.begin(), sums.end(), 0.0);
  const double s2 = std::accumulate(sqs.begin(), sqs.end(), 0.0);
  McScalar out;
  out.terms = n_pairs;
  out.value = s / n_pairs;
  const double var = std::max(0.0, s2 / n_pairs - out.value * out.value);
  out.stderr_ = std::sqrt(var / n_pairs);
  return out;
}

McScalar haar_unitary_frame_potential_estimate(int d, int k,
                                               std::int64_t n_pairs, Rng& rng,
                                               int workers) {
  if (k <= d || k <= 10) {
    McScalar out;
    out.value = haar_unitary_frame_potential(d, k);
    out.stderr_ = 0.0;
    out.terms = 0;
    return out;
  }
  return haar_unitary_frame_potential_mc(d, k, n_pairs, rng, workers);
}

Matrix heisenberg_first_twirl(const Matrix& o) {
  if (o.rows() != o.cols()) throw ArgumentError("square input required");
  const int d = static_cast<int>(o.rows());
  return Matrix(o.trace() / static_cast<double>(d) *
                Matrix::Identity(d, d));
}

double frame_potential_from_moment(const Matrix& mean) {
  return mean.squaredNorm();
}

}  // namespace qerg
