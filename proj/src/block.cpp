#include "rabisym/block.hpp"

namespace rabisym
{

BlockOp BlockOp::from_blocks(const FockBasis& basis, const Eigen::MatrixXd& a,
                             const Eigen::MatrixXd& b, const Eigen::MatrixXd& c,
                             const Eigen::MatrixXd& d)
{
    const int m = basis.states;
    if (a.rows() != m || b.rows() != m || c.rows() != m || d.rows() != m ||
        a.cols() != m || b.cols() != m || c.cols() != m || d.cols() != m)
        throw InvalidParams("from_blocks: block dimension mismatch");
    BlockOp op;
    op.basis = basis;
    op.mat.resize(2 * m, 2 * m);
    op.mat.topLeftCorner(m, m) = a;
    op.mat.topRightCorner(m, m) = b;
    op.mat.bottomLeftCorner(m, m) = c;
    op.mat.bottomRightCorner(m, m) = d;
    return op;
}

double block_window_norm(const Eigen::MatrixXd& m, int block_dim, int window)
{
    double sum = 0.0;
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
            sum += m.block(bi * block_dim, bj * block_dim, window, window).squaredNorm();
    return std::sqrt(sum);
}

double block_window_norm(const BlockOp& op, int window)
{
    return block_window_norm(op.mat, op.block_dim(), window);
}

} // namespace rabisym
