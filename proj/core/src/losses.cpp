#include "impactir/losses.hpp"

#include <cmath>

#include "impactir/error.hpp"

namespace impactir::losses {

namespace {

void require_square(Matrix const& scores)
{
    if (scores.rows() != scores.cols() || scores.rows() == 0) {
        throw Error(ErrorCode::NonSquare,
                    std::to_string(scores.rows()) + "x" + std::to_string(scores.cols()) + " score matrix");
    }
}

void require_rows(Matrix const& reps)
{
    if (reps.rows() == 0) {
        throw Error(ErrorCode::InvalidArgument, "representation matrix has no rows");
    }
}

Eigen::RowVectorXd column_means(Matrix const& reps) { return reps.colwise().mean(); }

/// Row-wise softmax with the row maximum subtracted.
Matrix softmax_rows(Matrix const& scores)
{
    Matrix shifted = scores.colwise() - scores.rowwise().maxCoeff();
    Matrix e = shifted.array().exp();
    return e.array().colwise() / e.rowwise().sum().array();
}

}  // namespace

Batch::Batch(Matrix queries, Matrix documents) : m_queries(std::move(queries)), m_documents(std::move(documents))
{
    if (m_queries.rows() == 0 || m_queries.cols() == 0) {
        throw Error(ErrorCode::InvalidArgument, "batch must have at least one row and column");
    }
    if (m_queries.rows() != m_documents.rows() || m_queries.cols() != m_documents.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "query and document representations differ in shape");
    }
    for (auto const* m : {&m_queries, &m_documents}) {
        if (!m->allFinite()) {
            throw Error(ErrorCode::NonFinite, "batch representation");
        }
        if ((m->array() < 0.0).any()) {
            throw Error(ErrorCode::NegativeWeight, "batch representation");
        }
    }
}

Matrix score_matrix(Batch const& batch) { return batch.queries() * batch.documents().transpose(); }

double in_batch_loss(Matrix const& scores)
{
    require_square(scores);
    Eigen::VectorXd max = scores.rowwise().maxCoeff();
    Eigen::VectorXd lse =
        max.array() + (scores.colwise() - max).array().exp().rowwise().sum().log();
    double loss = (lse - scores.diagonal()).mean();
    // each term is a log-sum-exp minus one of its own arguments, hence >= 0
    return loss < 0.0 ? 0.0 : loss;
}

Matrix in_batch_loss_grad(Matrix const& scores)
{
    require_square(scores);
    auto const n = static_cast<double>(scores.rows());
    Matrix grad = softmax_rows(scores);
    grad.diagonal().array() -= 1.0;
    return grad / n;
}

double flops_loss(Matrix const& reps)
{
    require_rows(reps);
    return column_means(reps).squaredNorm();
}

Matrix flops_loss_grad(Matrix const& reps)
{
    require_rows(reps);
    Eigen::RowVectorXd g = 2.0 * column_means(reps) / static_cast<double>(reps.rows());
    return g.replicate(reps.rows(), 1);
}

double joint_flops_loss(Matrix const& queries, Matrix const& documents)
{
    require_rows(queries);
    require_rows(documents);
    if (queries.cols() != documents.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "query and document vocabularies differ");
    }
    return column_means(queries).dot(column_means(documents));
}

std::pair<Matrix, Matrix> joint_flops_grad(Matrix const& queries, Matrix const& documents)
{
    require_rows(queries);
    require_rows(documents);
    if (queries.cols() != documents.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "query and document vocabularies differ");
    }
    Eigen::RowVectorXd gq = column_means(documents) / static_cast<double>(queries.rows());
    Eigen::RowVectorXd gd = column_means(queries) / static_cast<double>(documents.rows());
    return {gq.replicate(queries.rows(), 1), gd.replicate(documents.rows(), 1)};
}

}  // namespace impactir::losses
