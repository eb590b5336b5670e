#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <Eigen/SparseCholesky>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>

namespace hypercircle {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigenNonConvergence : public LinalgError {
 public:
  EigenNonConvergence(const std::string& what, double last_estimate)
      : LinalgError(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

enum class MatrixKind { Spd, SymmetricIndefinite };

/// Symmetric sparse matrix. Eigen stores it compressed by column, which for a
/// symmetric matrix coincides with the compressed row layout.
struct SparseSym {
  SparseMatrix matrix;
  MatrixKind kind = MatrixKind::Spd;

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Sparse LDL^T with AMD ordering. Rejects matrices with a non-positive pivot.
/// Immutable after construction; solve() may run concurrently.
class SpdFactorization {
 public:
  explicit SpdFactorization(const SparseMatrix& a);
  Vector solve(const Vector& b) const;
  Eigen::Index dim() const { return a_.rows(); }

 private:
  using Ldlt = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;
  SparseMatrix a_;
  std::shared_ptr<const Ldlt> ldlt_;
};

/// LU with COLAMD ordering and partial pivoting for symmetric indefinite
/// (saddle-point) systems.
class SaddleFactorization {
 public:
  explicit SaddleFactorization(const SparseMatrix& a);
  Vector solve(const Vector& b) const;
  Eigen::Index dim() const { return a_.rows(); }

 private:
  using Lu = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;
  SparseMatrix a_;
  std::shared_ptr<Lu> lu_;
};

/// Relative residual accepted by every direct solve.
inline constexpr double kSolveTolerance = 1e-10;

Vector factor_solve_spd(const SparseSym& a, const Vector& b);
Vector factor_solve_saddle(const SparseSym& a, const Vector& b);

struct EigenOptions {
  double tolerance = 1e-6;
  int max_iterations = 500;
  std::uint64_t seed = 0x5eed2024;
};

struct EigenResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // Ritz residual bound relative to the eigenvalue
};

using LinearOperator = std::function<Vector(const Vector&)>;

/// Largest lambda of G x = lambda B x by Lanczos in the B inner product with
/// full reorthogonalization. `apply_g` must be symmetric positive
/// semidefinite. When `deflate` is given, iterates stay B-orthogonal to it.
EigenResult largest_gen_eig(const LinearOperator& apply_g, const SparseMatrix& b,
                            const EigenOptions& options = {}, const Vector* deflate = nullptr);

/// Smallest lambda of A x = lambda B x by shift-invert Lanczos. With `gauge`,
/// the problem is restricted to vectors B-orthogonal to it, which removes a
/// null space of A spanned by `gauge`.
EigenResult smallest_gen_eig(const SparseMatrix& a, const SparseMatrix& b,
                             const EigenOptions& options = {1e-8, 500, 0x5eed2024},
                             const Vector* gauge = nullptr);

/// Deterministic start vector with entries in (-1, 1).
Vector seeded_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace hypercircle
