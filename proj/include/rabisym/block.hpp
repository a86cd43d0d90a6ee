#ifndef RABISYM_BLOCK_HPP
#define RABISYM_BLOCK_HPP

#include <Eigen/Dense>

#include "fock.hpp"

namespace rabisym
{

/// 2x2 qubit-block arrangement of boson operators sharing one sector
/// basis, stored as a single dense matrix (qubit index major).
struct BlockOp
{
    Eigen::MatrixXd mat; // 2M x 2M
    FockBasis basis;

    int block_dim() const { return basis.states; }
    int dim() const { return static_cast<int>(mat.rows()); }

    Eigen::Block<Eigen::MatrixXd> block(int i, int j)
    {
        const int m = block_dim();
        return mat.block(i * m, j * m, m, m);
    }
    Eigen::Block<const Eigen::MatrixXd> block(int i, int j) const
    {
        const int m = block_dim();
        return mat.block(i * m, j * m, m, m);
    }

    static BlockOp from_blocks(const FockBasis& basis,
                               const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                               const Eigen::MatrixXd& c, const Eigen::MatrixXd& d);
};

/// Frobenius norm of m restricted to rows and columns whose boson index
/// (within each qubit block) lies in the leading `window` states.
double block_window_norm(const BlockOp& op, int window);

/// Same restriction for an arbitrary matrix of the same block layout.
double block_window_norm(const Eigen::MatrixXd& m, int block_dim, int window);

} // namespace rabisym

#endif
