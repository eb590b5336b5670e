#include "hypercircle/linalg.hpp"

#include <Eigen/Dense>
#include <limits>
#include <random>
#include <string>

namespace hypercircle {

namespace {

template <class Solve>
Vector solve_refined(const SparseMatrix& a, const Vector& b, Solve&& raw_solve) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(b.size());
  Vector x = raw_solve(b);
  Vector r = b - a * x;
  for (int step = 0; step < 3 && r.norm() > 1e-14 * bnorm; ++step) {
    x += raw_solve(r);
    r = b - a * x;
  }
  const double rel = r.norm() / bnorm;
  if (!(rel <= kSolveTolerance)) {
    throw LinalgError("direct solve residual " + std::to_string(rel) + " exceeds tolerance");
  }
  return x;
}

}  // namespace

SpdFactorization::SpdFactorization(const SparseMatrix& a) : a_(a) {
  if (a.rows() != a.cols()) throw LinalgError("matrix is not square");
  auto ldlt = std::make_shared<Ldlt>();
  ldlt->compute(a_);
  if (ldlt->info() != Eigen::Success) throw LinalgError("LDL^T factorization failed");
  const Vector& d = ldlt->vectorD();
  const auto& perm = ldlt->permutationP().indices();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Eigen::Index k = perm(i);
    if (!(d(k) > 0.0)) {
      throw LinalgError("matrix is not SPD: non-positive pivot at index " + std::to_string(i));
    }
  }
  ldlt_ = std::move(ldlt);
}

Vector SpdFactorization::solve(const Vector& b) const {
  return solve_refined(a_, b, [&](const Vector& rhs) -> Vector { return ldlt_->solve(rhs); });
}

SaddleFactorization::SaddleFactorization(const SparseMatrix& a) : a_(a) {
  if (a.rows() != a.cols()) throw LinalgError("matrix is not square");
  a_.makeCompressed();
  auto lu = std::make_shared<Lu>();
  lu->analyzePattern(a_);
  lu->factorize(a_);
  if (lu->info() != Eigen::Success) {
    throw LinalgError("singular saddle-point system (is a gauge condition missing?): " +
                      lu->lastErrorMessage());
  }
  lu_ = std::move(lu);
}

Vector SaddleFactorization::solve(const Vector& b) const {
  return solve_refined(a_, b, [&](const Vector& rhs) -> Vector { return lu_->solve(rhs); });
}

Vector factor_solve_spd(const SparseSym& a, const Vector& b) {
  return SpdFactorization(a.matrix).solve(b);
}

Vector factor_solve_saddle(const SparseSym& a, const Vector& b) {
  return SaddleFactorization(a.matrix).solve(b);
}

Vector seeded_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v(i) = 2.0 * u - 1.0;
  }
  return v;
}

namespace {

// Lanczos for the largest eigenvalue of an operator that is self-adjoint in
// the B inner product.
EigenResult lanczos_max(const LinearOperator& op, const SparseMatrix& b, const EigenOptions& opt,
                        const Vector* deflate) {
  const Eigen::Index n = b.rows();
  if (n == 0) throw LinalgError("empty eigenproblem");

  Vector bz;
  double zbz = 0.0;
  if (deflate != nullptr) {
    bz = b * (*deflate);
    zbz = deflate->dot(bz);
  }
  auto project = [&](Vector& v) {
    if (deflate != nullptr) v -= (bz.dot(v) / zbz) * (*deflate);
  };

  const Eigen::Index admissible = n - (deflate != nullptr ? 1 : 0);
  if (admissible <= 0) throw LinalgError("no admissible directions");

  std::vector<Vector> q;
  std::vector<Vector> bq;
  std::vector<double> alpha;
  std::vector<double> beta;

  Vector v = seeded_vector(n, opt.seed);
  project(v);
  Vector bv = b * v;
  v /= std::sqrt(v.dot(bv));
  bv = b * v;
  q.push_back(v);
  bq.push_back(bv);

  double theta = 0.0;
  double residual = 0.0;
  for (int k = 0; k < opt.max_iterations; ++k) {
    Vector w = op(q[k]);
    const double a = bq[k].dot(w);
    alpha.push_back(a);
    w -= a * q[k];
    if (k > 0) w -= beta[k - 1] * q[k - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < q.size(); ++j) w -= bq[j].dot(w) * q[j];
      project(w);
    }
    Vector bw = b * w;
    const double bt = std::sqrt(std::max(0.0, w.dot(bw)));

    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    Vector diag = Eigen::Map<const Vector>(alpha.data(), m);
    Vector sub = m > 1 ? Vector(Eigen::Map<const Vector>(beta.data(), m - 1)) : Vector(0);
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = tri.eigenvalues()(m - 1);
    const double last = tri.eigenvectors()(m - 1, m - 1);
    residual = std::abs(bt * last) / std::max(std::abs(theta), std::numeric_limits<double>::min());

    const bool exhausted = m >= admissible || bt <= 1e-14 * std::max(1.0, std::abs(theta));
    if (residual <= opt.tolerance || exhausted) {
      return {theta, k + 1, exhausted ? 0.0 : residual};
    }
    beta.push_back(bt);
    q.push_back(w / bt);
    bq.push_back(bw / bt);
  }
  throw EigenNonConvergence("Lanczos did not converge in " + std::to_string(opt.max_iterations) +
                                " iterations; last Ritz value " + std::to_string(theta),
                            theta);
}

}  // namespace

EigenResult largest_gen_eig(const LinearOperator& apply_g, const SparseMatrix& b,
                            const EigenOptions& options, const Vector* deflate) {
  const SpdFactorization b_fact(b);
  auto op = [&](const Vector& x) -> Vector { return b_fact.solve(apply_g(x)); };
  return lanczos_max(op, b, options, deflate);
}

EigenResult smallest_gen_eig(const SparseMatrix& a, const SparseMatrix& b,
                             const EigenOptions& options, const Vector* gauge) {
  EigenResult inv;
  if (gauge == nullptr) {
    const SpdFactorization a_fact(a);
    auto op = [&](const Vector& x) -> Vector { return a_fact.solve(b * x); };
    inv = lanczos_max(op, b, options, nullptr);
  } else {
    // Bordered system [[A, Bz], [(Bz)^T, 0]] solves A y = B x on the
    // complement of the gauge direction.
    const Eigen::Index n = a.rows();
    const Vector c = b * (*gauge);
    Triplets t;
    t.reserve(a.nonZeros() + 2 * n);
    for (int k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (c(i) != 0.0) {
        t.emplace_back(i, n, c(i));
        t.emplace_back(n, i, c(i));
      }
    }
    SparseMatrix bordered(n + 1, n + 1);
    bordered.setFromTriplets(t.begin(), t.end());
    const SaddleFactorization fact(bordered);
    auto op = [&](const Vector& x) -> Vector {
      Vector rhs = Vector::Zero(n + 1);
      rhs.head(n) = b * x;
      return fact.solve(rhs).head(n);
    };
    inv = lanczos_max(op, b, options, gauge);
  }
  if (!(inv.value > 0.0)) throw LinalgError("shift-invert Lanczos found no positive eigenvalue");
  return {1.0 / inv.value, inv.iterations, inv.residual};
}

}  // namespace hypercircle
