#include "rabisym/symmetry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>

namespace rabisym
{

BlockOp assemble_Q(const CoeffTable& coeffs, const ModelParams& params, Sector sector,
                   int states)
{
    params.validate();
    const int n_bias = coeffs.n_bias;
    if (states < 4 * (n_bias + 2))
        throw InvalidParams("cutoff below 4(N+2) sector states for bias index " +
                            std::to_string(n_bias));

    const FockBasis basis{sector, states};
    const int full = basis.full_cutoff();
    auto [a_plus, a_minus] = bogoliubov_pair(params, full);

    std::vector<Eigen::MatrixXd> up_pow(2 * n_bias + 1), dn_pow(2 * n_bias + 1);
    up_pow[0] = dn_pow[0] = Eigen::MatrixXd::Identity(full, full);
    for (int k = 1; k <= 2 * n_bias; ++k)
    {
        up_pow[k] = a_plus.mat.transpose() * up_pow[k - 1];
        dn_pow[k] = dn_pow[k - 1] * a_minus.mat;
    }

    std::array<Eigen::MatrixXd, 4> blocks;
    for (auto& b : blocks)
        b = Eigen::MatrixXd::Zero(full, full);
    for (const auto& [key, value] : coeffs.entries)
    {
        const auto [e, n, m] = key;
        blocks[static_cast<size_t>(e)] +=
            value * std::pow(2.0, -0.5 * (n + m)) * (up_pow[n] * dn_pow[m]);
    }

    std::array<Eigen::MatrixXd, 4> proj;
    for (int i = 0; i < 4; ++i)
        proj[i] = project_sector(BosonOp{blocks[i], std::nullopt}, sector).mat;
    return BlockOp::from_blocks(basis, proj[0], proj[1], proj[2], proj[3]);
}

SymmetryOperator assemble_J(const BlockOp& q, const CoeffTable& coeffs)
{
    const Z4Phase phase = z4_phase(q.basis.sector, q.block_dim());
    SymmetryOperator j;
    j.q = q;
    j.n_bias = coeffs.n_bias;
    j.quarter_turns = phase.quarter_turns;
    j.j = q;
    const int m = q.block_dim();
    for (int bi = 0; bi < 2; ++bi)
        j.j.mat.middleRows(bi * m, m) = phase.diag.asDiagonal() * q.mat.middleRows(bi * m, m);
    return j;
}

SymmetryOperator build_symmetry(int n_bias, const ModelParams& params, Sector sector,
                                int states)
{
    const CoeffTable coeffs = n_bias <= 3 ? closed_form_coeffs(n_bias, params)
                                          : solve_recurrence(n_bias, params);
    return assemble_J(assemble_Q(coeffs, params, sector, states), coeffs);
}

double JSquarePoly::eval(double energy) const
{
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;)
        acc = acc * energy + coeffs[i];
    return acc;
}

JSquarePoly jsquare_poly(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                         const Eigen::MatrixXd& evecs, int degree, int n_fit)
{
    if (n_fit > evals.size())
        throw InvalidParams("jsquare_poly: more fit states than eigenstates");
    if (n_fit < degree + 1)
        throw InvalidParams("jsquare_poly: underdetermined fit");

    // J^2 in the eigenbasis without ever forming the square: J is the
    // stored real symmetric matrix up to the global phase, so
    // (J^2)_{ij} = (J psi_i) . (J psi_j)
    const Eigen::MatrixXd jv = j.j.mat * evecs.leftCols(n_fit);
    const Eigen::MatrixXd jsq = jv.transpose() * jv;

    JSquarePoly poly;
    poly.n_bias = j.n_bias;
    poly.fitted_states = n_fit;

    const double jnorm = jsq.diagonal().cwiseAbs().maxCoeff();
    double offdiag = 0.0;
    for (int i = 0; i < n_fit; ++i)
        for (int k = 0; k < n_fit; ++k)
            if (i != k && std::abs(evals(i) - evals(k)) > 1e-8 * std::max(1.0, std::abs(evals(i))))
                offdiag = std::max(offdiag, std::abs(jsq(i, k)));
    poly.max_offdiag = jnorm > 0 ? offdiag / jnorm : 0.0;

    // Vandermonde in the shifted-scaled eigenvalue, converted back to
    // monomials in E afterwards; the raw basis is unusable beyond a
    // handful of states
    const double lo = evals(0);
    const double hi = evals(n_fit - 1);
    const double span = std::max(hi - lo, 1e-12);
    const double shift = 0.5 * (hi + lo);
    const double scale = 2.0 / span;

    // per-state weighting keeps the low-energy states from being
    // drowned by the E^{2N} growth of the target
    const Eigen::VectorXd target = jsq.diagonal();
    Eigen::VectorXd weight(n_fit);
    for (int i = 0; i < n_fit; ++i)
        weight(i) = 1.0 / std::max(1.0, std::abs(target(i)));

    Eigen::MatrixXd vand(n_fit, degree + 1);
    for (int i = 0; i < n_fit; ++i)
    {
        const double t = (evals(i) - shift) * scale;
        double p = 1.0;
        for (int k = 0; k <= degree; ++k)
        {
            vand(i, k) = weight(i) * p;
            p *= t;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
    if (qr.rank() < degree + 1)
        throw IllConditioned("jsquare_poly: rank-deficient fit basis");

    const Eigen::VectorXd wtarget = weight.cwiseProduct(target);
    const Eigen::VectorXd c = qr.solve(wtarget);
    poly.residual = (vand * c - wtarget).norm() / std::sqrt(static_cast<double>(n_fit));

    // expand sum_k c_k (scale*(E - shift))^k into monomials in E
    std::vector<double> mono(static_cast<size_t>(degree) + 1, 0.0);
    std::vector<double> basis{1.0}; // coefficients of (scale*(E-shift))^k
    for (int k = 0; k <= degree; ++k)
    {
        for (size_t i = 0; i < basis.size(); ++i)
            mono[i] += c(k) * basis[i];
        if (k < degree)
        {
            // multiply basis polynomial by scale*(E - shift)
            std::vector<double> next(basis.size() + 1, 0.0);
            for (size_t i = 0; i < basis.size(); ++i)
            {
                next[i + 1] += scale * basis[i];
                next[i] += -scale * shift * basis[i];
            }
            basis = std::move(next);
        }
    }
    poly.coeffs = std::move(mono);
    return poly;
}

std::vector<int> parity_labels(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                               const Eigen::MatrixXd& evecs, int count, double degen_tol)
{
    count = std::min<int>(count, static_cast<int>(evals.size()));
    std::vector<int> labels(static_cast<size_t>(count), 0);

    int i = 0;
    while (i < count)
    {
        const bool pair = i + 1 < static_cast<int>(evals.size()) &&
                          std::abs(evals(i + 1) - evals(i)) <
                              degen_tol * std::max(1.0, std::abs(evals(i)));
        if (!pair)
        {
            const double expect = evecs.col(i).dot(j.j.mat * evecs.col(i));
            labels[static_cast<size_t>(i)] = expect >= 0.0 ? 1 : -1;
            ++i;
            continue;
        }
        // at a true crossing the sorted eigenvectors are an arbitrary
        // mixture; diagonalize J inside the 2x2 block instead
        Eigen::MatrixXd sub(2, 2);
        const Eigen::VectorXd ji = j.j.mat * evecs.col(i);
        const Eigen::VectorXd jk = j.j.mat * evecs.col(i + 1);
        sub(0, 0) = evecs.col(i).dot(ji);
        sub(0, 1) = evecs.col(i).dot(jk);
        sub(1, 0) = evecs.col(i + 1).dot(ji);
        sub(1, 1) = evecs.col(i + 1).dot(jk);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sub + sub.transpose()));
        labels[static_cast<size_t>(i)] = es.eigenvalues()(0) >= 0.0 ? 1 : -1;
        if (i + 1 < count)
            labels[static_cast<size_t>(i) + 1] = es.eigenvalues()(1) >= 0.0 ? 1 : -1;
        i += 2;
    }
    return labels;
}

std::vector<int> parity_operator(const SymmetryOperator& j, const Eigen::VectorXd& evals,
                                 const Eigen::MatrixXd& evecs, const JSquarePoly& poly,
                                 int count, double degen_tol)
{
    count = std::min<int>(count, static_cast<int>(evals.size()));
    for (int i = 0; i < count; ++i)
        if (poly.eval(evals(i)) <= 0.0)
            throw NonPositivePoly("poly(E) <= 0 at E = " + std::to_string(evals(i)) +
                                  "; truncation or parameter problem");
    return parity_labels(j, evals, evecs, count, degen_tol);
}

} // namespace rabisym
