#include "rabisym/model.hpp"

namespace rabisym
{

namespace
{

struct SectorOps
{
    Eigen::MatrixXd number;  // a^dag a
    Eigen::MatrixXd squeeze; // (a^dag)^2 + a^2
    Eigen::MatrixXd id;
};

SectorOps sector_quadratics(Sector sector, int states)
{
    const int full = FockBasis{sector, states}.full_cutoff();
    const BosonOp a = annihilation(full);
    const Eigen::MatrixXd adag = a.mat.transpose();
    BosonOp num{adag * a.mat, std::nullopt};
    BosonOp sq{adag * adag + a.mat * a.mat, std::nullopt};
    SectorOps ops;
    ops.number = project_sector(num, sector).mat;
    ops.squeeze = project_sector(sq, sector).mat;
    ops.id = Eigen::MatrixXd::Identity(states, states);
    return ops;
}

} // namespace

BlockOp build_lab_hamiltonian(const ModelParams& params, Sector sector, int states)
{
    params.validate();
    const auto ops = sector_quadratics(sector, states);
    // delta and epsilon are kept in units of omega (see ModelParams),
    // so every term carries the overall omega scale
    const double w = params.omega;
    const Eigen::MatrixXd diag_boson = w * ops.number;
    const Eigen::MatrixXd coupling =
        0.5 * w * params.epsilon * ops.id + w * params.g * ops.squeeze;
    return BlockOp::from_blocks(FockBasis{sector, states},
                                diag_boson + 0.5 * w * params.delta * ops.id, coupling, coupling,
                                diag_boson - 0.5 * w * params.delta * ops.id);
}

HamiltonianSet build_h0(const ModelParams& params, Sector sector, int states)
{
    params.validate();
    const auto ops = sector_quadratics(sector, states);
    const double eps = params.epsilon;
    const Eigen::MatrixXd off = -0.5 * params.delta * ops.id;
    const Eigen::MatrixXd upper = ops.number + params.g * ops.squeeze + 0.5 * eps * ops.id;
    const Eigen::MatrixXd lower = ops.number - params.g * ops.squeeze - 0.5 * eps * ops.id;

    const FockBasis basis{sector, states};
    HamiltonianSet set;
    set.sector = sector;
    set.params = params;
    set.h0 = BlockOp::from_blocks(basis, upper, off, off, lower);
    set.h_tilde = BlockOp::from_blocks(basis, lower + eps * ops.id, off, off, upper - eps * ops.id);

    // cross-check the diagonal blocks against 2 beta K0^{a_pm} - 1/2 +- eps/2
    const double beta = params.beta();
    auto [a_plus, a_minus] = bogoliubov_pair(params, basis.full_cutoff());
    BosonOp np{a_plus.mat.transpose() * a_plus.mat, std::nullopt};
    BosonOp nm{a_minus.mat.transpose() * a_minus.mat, std::nullopt};
    const Eigen::MatrixXd upper_lie =
        beta * project_sector(np, sector).mat + (0.5 * (beta - 1.0) + 0.5 * eps) * ops.id;
    const Eigen::MatrixXd lower_lie =
        beta * project_sector(nm, sector).mat + (0.5 * (beta - 1.0) - 0.5 * eps) * ops.id;

    // a_pm^dag a_pm is exact on rows/cols two below the edge
    const int window = window_states(BosonOp{ops.id, basis}, 4);
    double dev = (upper - upper_lie).topLeftCorner(window, window).cwiseAbs().maxCoeff();
    dev = std::max(dev, (lower - lower_lie).topLeftCorner(window, window).cwiseAbs().maxCoeff());
    set.lie_form_deviation = dev;
    return set;
}

BlockOp build_h_tilde(const ModelParams& params, Sector sector, int states)
{
    return build_h0(params, sector, states).h_tilde;
}

} // namespace rabisym
