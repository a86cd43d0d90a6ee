#include "rabisym/fock.hpp"

#include <cmath>

namespace rabisym
{

BosonOp annihilation(int cutoff)
{
    if (cutoff < 2)
        throw InvalidParams("Fock cutoff must be at least 2");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n)
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return BosonOp{std::move(m), std::nullopt};
}

BosonOp creation(int cutoff)
{
    BosonOp a = annihilation(cutoff);
    return BosonOp{a.mat.transpose(), std::nullopt};
}

BogoliubovCoeffs bogoliubov_coeffs(const ModelParams& params)
{
    params.validate();
    const double beta = params.beta();
    return {std::sqrt((1.0 + beta) / (2.0 * beta)), std::sqrt((1.0 - beta) / (2.0 * beta))};
}

std::pair<BosonOp, BosonOp> bogoliubov_pair(const ModelParams& params, int cutoff)
{
    const auto [u, v] = bogoliubov_coeffs(params);
    const BosonOp a = annihilation(cutoff);
    Eigen::MatrixXd adag = a.mat.transpose();
    BosonOp a_plus{u * a.mat + v * adag, std::nullopt};
    BosonOp a_minus{u * a.mat - v * adag, std::nullopt};
    return {std::move(a_plus), std::move(a_minus)};
}

Su11Generators su11_generators(const BosonOp& b, const BosonOp& b_dag)
{
    if (b.dim() != b_dag.dim() || b.basis != b_dag.basis)
        throw InvalidParams("su11_generators: mode pair on mismatched bases");
    const int d = b.dim();
    Su11Generators k;
    k.k0 = BosonOp{0.5 * (b_dag.mat * b.mat + 0.5 * Eigen::MatrixXd::Identity(d, d)), b.basis};
    k.kplus = BosonOp{0.5 * (b_dag.mat * b_dag.mat), b.basis};
    k.kminus = BosonOp{0.5 * (b.mat * b.mat), b.basis};
    return k;
}

BosonOp project_sector(const BosonOp& op, Sector sector)
{
    if (op.basis)
        throw InvalidParams("project_sector: operator already lives on a sector");
    const int d = op.dim();
    const int parity = sector == Sector::Even ? 0 : 1;

    // quadratic constructions are sector-preserving to the last bit;
    // any leakage is a construction bug
    constexpr double kCrossTol = 1e-14;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if ((i + j) % 2 == 1 && std::abs(op.mat(i, j)) > kCrossTol)
                throw SectorViolation("cross-sector element at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");

    const int m = (d - parity + 1) / 2;
    FockBasis basis{sector, m};
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            sub(i, j) = op.mat(2 * i + parity, 2 * j + parity);
    return BosonOp{std::move(sub), basis};
}

BosonOp embed_sector(const BosonOp& op)
{
    if (!op.basis)
        throw InvalidParams("embed_sector: operator has no sector basis");
    const int m = op.basis->states;
    const int d = op.basis->full_cutoff();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            full(op.basis->fock_index(i), op.basis->fock_index(j)) = op.mat(i, j);
    return BosonOp{std::move(full), std::nullopt};
}

Z4Phase z4_phase(Sector sector, int states)
{
    Z4Phase p;
    p.quarter_turns = sector == Sector::Even ? 0 : 1;
    p.diag.resize(states);
    for (int k = 0; k < states; ++k)
        p.diag(k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

int window_states(const BosonOp& op, int margin)
{
    const int cutoff = op.basis ? op.basis->full_cutoff() : op.dim();
    int count = 0;
    for (int k = 0; k < op.dim(); ++k)
        if (op.fock_index(k) <= cutoff - margin)
            ++count;
    return count;
}

int window_states(const FockBasis& basis, int margin)
{
    const int cutoff = basis.full_cutoff();
    int count = 0;
    for (int k = 0; k < basis.states; ++k)
        if (basis.fock_index(k) <= cutoff - margin)
            ++count;
    return count;
}

double window_norm(const Eigen::MatrixXd& m, int window)
{
    return m.topLeftCorner(window, window).norm();
}

} // namespace rabisym
