#ifndef RABISYM_SYMMETRY_HPP
#define RABISYM_SYMMETRY_HPP

#include <optional>
#include <vector>

#include "block.hpp"
#include "coeffs.hpp"
#include "model.hpp"

namespace rabisym
{

/// J = exp(i pi a^dag a / 2) Q on one sector, kept real: J equals
/// i^quarter_turns times the stored matrix. The real matrix is
/// symmetric in both sectors and commutes with H0.
struct SymmetryOperator
{
    BlockOp q;
    BlockOp j;          // phase-applied real part
    int quarter_turns;  // 0 (Even) or 1 (Odd)
    int n_bias;
};

/// Q = (A B; C D) with each element sum_{n,m} M_{n,m} 2^{-(n+m)/2}
/// (a_+^dag)^n (a_-)^m, built on the full basis and sector-projected.
BlockOp assemble_Q(const CoeffTable& coeffs, const ModelParams& params, Sector sector,
                   int states);

SymmetryOperator assemble_J(const BlockOp& q, const CoeffTable& coeffs);

/// Convenience: coefficients (closed form for N <= 3, recurrence
/// otherwise) assembled into J at epsilon = 2 N beta.
SymmetryOperator build_symmetry(int n_bias, const ModelParams& params, Sector sector,
                                int states);

// --- J^2 polynomial ---------------------------------------------------------

/// Coefficients of J^2 = sum_i y_i H^i (degree 2N), fitted over the
/// lowest fitted_states eigenstates of H. residual is the scaled RMS
/// misfit; max_offdiag the largest eigenbasis off-diagonal of J^2
/// relative to its norm.
struct JSquarePoly
{
    int n_bias = 0;
    std::vector<double> coeffs; // y_0 .. y_degree
    double residual = 0.0;
    double max_offdiag = 0.0;
    int fitted_states = 0;

    double eval(double energy) const;
};

/// Fit diag(J^2) in the eigenbasis of H against a polynomial in the
/// eigenvalues. Only the lowest n_fit states enter (they must be
/// converged; see converged_prefix in spectrum.hpp). The fit runs in a
/// shifted-scaled variable and is converted back to monomials; throws
/// IllConditioned if even that basis is unusable.
JSquarePoly jsquare_poly(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                         const Eigen::MatrixXd& evecs, int degree, int n_fit);

// --- parity labels ----------------------------------------------------------

/// Per-eigenstate labels +-1 from the sign of <state|J|state> (phase
/// tag stripped). Eigenvalue pairs closer than
/// degen_tol * max(1, |E|) get their labels from diagonalizing J
/// inside the 2x2 degenerate block.
std::vector<int> parity_labels(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                               const Eigen::MatrixXd& evecs, int count,
                               double degen_tol = 1e-8);

/// Labels plus validation of the rescaling polynomial: throws
/// NonPositivePoly if poly(E) <= 0 for any labeled state.
std::vector<int> parity_operator(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                                 const Eigen::MatrixXd& evecs, const JSquarePoly& poly,
                                 int count, double degen_tol = 1e-8);

} // namespace rabisym

#endif
