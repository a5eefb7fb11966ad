#pragma once

#include <utility>

#include <Eigen/Core>

namespace impactir::losses {

/// Dense row-major matrix; rows are texts, columns are vocabulary terms.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Paired query / positive-document representations for one batch.
class Batch {
   public:
    /// Requires equal, non-zero shapes and finite non-negative entries.
    Batch(Matrix queries, Matrix documents);

    [[nodiscard]] Matrix const& queries() const noexcept { return m_queries; }
    [[nodiscard]] Matrix const& documents() const noexcept { return m_documents; }
    [[nodiscard]] Eigen::Index size() const noexcept { return m_queries.rows(); }
    [[nodiscard]] Eigen::Index vocab_size() const noexcept { return m_queries.cols(); }

   private:
    Matrix m_queries;
    Matrix m_documents;
};

/// S(i, j) = <query i, document j>.
[[nodiscard]] Matrix score_matrix(Batch const& batch);

/// In-batch negatives softmax cross-entropy: for row i the positive is column
/// i and every other column is a negative,
///   -(1/N) sum_i log(exp(S_ii) / sum_j exp(S_ij)).
/// Evaluated with log-sum-exp, so it stays finite for large scores.
[[nodiscard]] double in_batch_loss(Matrix const& scores);
[[nodiscard]] Matrix in_batch_loss_grad(Matrix const& scores);

/// FLOPS regulariser: squared norm of the column means.
[[nodiscard]] double flops_loss(Matrix const& reps);
[[nodiscard]] Matrix flops_loss_grad(Matrix const& reps);

/// Joint FLOPS: inner product of the query-side and document-side column means.
[[nodiscard]] double joint_flops_loss(Matrix const& queries, Matrix const& documents);
[[nodiscard]] std::pair<Matrix, Matrix> joint_flops_grad(Matrix const& queries, Matrix const& documents);

}  // namespace impactir::losses
