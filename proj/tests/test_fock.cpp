#include <doctest.h>

#include <random>

#include "rabisym/fock.hpp"

using namespace rabisym;

namespace
{

Eigen::MatrixXd commutator(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y)
{
    return x * y - y * x;
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& x, int n)
{
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(x.rows(), x.cols());
    for (int i = 0; i < n; ++i)
        p = p * x;
    return p;
}

} // namespace

TEST_CASE("annihilation matrix elements")
{
    const BosonOp a = annihilation(8);
    CHECK(a.mat(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.mat(3, 4) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(a.mat.col(0).norm() == 0.0); // vacuum annihilates
    CHECK_THROWS_AS(annihilation(1), InvalidParams);
}

TEST_CASE("creation is the transpose of annihilation")
{
    const BosonOp a = annihilation(10);
    const BosonOp ad = creation(10);
    CHECK((ad.mat - a.mat.transpose()).norm() == 0.0);
    CHECK(ad.mat(1, 0) == doctest::Approx(1.0));

    const Eigen::MatrixXd ccr = commutator(a.mat, ad.mat);
    for (int n = 0; n <= 8; ++n)
        CHECK(ccr(n, n) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bogoliubov coefficients at g = 0.3")
{
    ModelParams p;
    p.g = 0.3;
    CHECK(p.beta() == doctest::Approx(0.8).epsilon(1e-15));
    const auto [u, v] = bogoliubov_coeffs(p);
    CHECK(u == doctest::Approx(1.0606602).epsilon(1e-7));
    CHECK(v == doctest::Approx(0.3535534).epsilon(1e-7));
}

TEST_CASE("bogoliubov normalization and canonical commutators")
{
    std::mt19937 rng(2023);
    std::uniform_real_distribution<double> gdist(0.05, 0.45);
    const int cutoff = 40;
    for (int trial = 0; trial < 10; ++trial)
    {
        ModelParams p;
        p.g = gdist(rng);
        const auto [u, v] = bogoliubov_coeffs(p);
        CHECK(u * u - v * v == doctest::Approx(1.0).epsilon(1e-13));

        auto [ap, am] = bogoliubov_pair(p, cutoff);
        for (const Eigen::MatrixXd& mode : {ap.mat, am.mat})
        {
            const Eigen::MatrixXd ccr = commutator(mode, Eigen::MatrixXd(mode.transpose()));
            const int w = cutoff - 4;
            CHECK((ccr.topLeftCorner(w, w) - Eigen::MatrixXd::Identity(w, w))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("bogoliubov rejects g at or beyond the collapse point")
{
    ModelParams p;
    p.g = 0.5;
    CHECK_THROWS_AS(bogoliubov_pair(p, 16), InvalidParams);
}

TEST_CASE("su(1,1) generators and relations for all three modes")
{
    const int cutoff = 40;
    ModelParams p;
    p.g = 0.27;
    auto [ap, am] = bogoliubov_pair(p, cutoff);
    BosonOp a = annihilation(cutoff);

    const auto k_a = su11_generators(a, BosonOp{a.mat.transpose(), std::nullopt});
    CHECK(k_a.k0.mat(0, 0) == doctest::Approx(0.25).epsilon(1e-15));

    const int w = cutoff - 4;
    for (const BosonOp* mode : std::initializer_list<const BosonOp*>{&a, &ap, &am})
    {
        const auto k = su11_generators(*mode, BosonOp{mode->mat.transpose(), std::nullopt});
        const Eigen::MatrixXd r1 = commutator(k.k0.mat, k.kplus.mat) - k.kplus.mat;
        const Eigen::MatrixXd r2 = commutator(k.k0.mat, k.kminus.mat) + k.kminus.mat;
        const Eigen::MatrixXd r3 = commutator(k.kminus.mat, k.kplus.mat) - 2.0 * k.k0.mat;
        CHECK(r1.topLeftCorner(w, w).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r2.topLeftCorner(w, w).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r3.topLeftCorner(w, w).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("power commutation relations of the Lie algebra")
{
    // [(K_-)^N, K_0] = N (K_-)^N and [K_0, (-K_+)^N] = N (-K_+)^N
    const int cutoff = 60;
    ModelParams p;
    p.g = 0.31;
    auto [ap, am] = bogoliubov_pair(p, cutoff);
    BosonOp a = annihilation(cutoff);

    for (const BosonOp* mode : std::initializer_list<const BosonOp*>{&a, &ap, &am})
    {
        const auto k = su11_generators(*mode, BosonOp{mode->mat.transpose(), std::nullopt});
        for (int n = 1; n <= 4; ++n)
        {
            const int w = cutoff - 2 * n - 4;
            const Eigen::MatrixXd km_n = matrix_power(k.kminus.mat, n);
            const Eigen::MatrixXd kp_n = matrix_power(-k.kplus.mat, n);
            const Eigen::MatrixXd lhs1 = commutator(km_n, k.k0.mat) - n * km_n;
            const Eigen::MatrixXd lhs2 = commutator(k.k0.mat, kp_n) - n * kp_n;
            CHECK(lhs1.topLeftCorner(w, w).norm() <= 1e-10 * std::max(1.0, km_n.norm()));
            CHECK(lhs2.topLeftCorner(w, w).norm() <= 1e-10 * std::max(1.0, kp_n.norm()));
        }
    }
}

TEST_CASE("sector projection")
{
    const int cutoff = 12;
    const BosonOp a = annihilation(cutoff);

    SUBCASE("a^2 restricted to the even sector")
    {
        BosonOp asq{a.mat * a.mat, std::nullopt};
        const BosonOp even = project_sector(asq, Sector::Even);
        CHECK(even.basis->states == 6);
        CHECK(even.mat(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }

    SUBCASE("parity-flipping operators are rejected")
    {
        CHECK_THROWS_AS(project_sector(a, Sector::Even), SectorViolation);
    }

    SUBCASE("number operator keeps even occupations")
    {
        BosonOp num{Eigen::MatrixXd(a.mat.transpose() * a.mat), std::nullopt};
        const BosonOp even = project_sector(num, Sector::Even);
        for (int k = 0; k < even.dim(); ++k)
            CHECK(even.mat(k, k) == doctest::Approx(2.0 * k));
        const BosonOp odd = project_sector(num, Sector::Odd);
        for (int k = 0; k < odd.dim(); ++k)
            CHECK(odd.mat(k, k) == doctest::Approx(2.0 * k + 1.0));
    }

    SUBCASE("embed then project round-trips exactly")
    {
        BosonOp num{Eigen::MatrixXd(a.mat.transpose() * a.mat), std::nullopt};
        const BosonOp even = project_sector(num, Sector::Even);
        const BosonOp back = project_sector(embed_sector(even), Sector::Even);
        CHECK((back.mat - even.mat).norm() == 0.0);
    }
}

TEST_CASE("z4 phase diagonals")
{
    const Z4Phase even = z4_phase(Sector::Even, 4);
    CHECK(even.quarter_turns == 0);
    CHECK(even.diag(0) == 1.0);
    CHECK(even.diag(1) == -1.0);
    CHECK(even.diag(2) == 1.0);
    CHECK(even.diag(3) == -1.0);

    const Z4Phase odd = z4_phase(Sector::Odd, 3);
    CHECK(odd.quarter_turns == 1);
    CHECK(odd.diag(0) == 1.0);
    CHECK(odd.diag(1) == -1.0);
    CHECK(odd.diag(2) == 1.0);

    CHECK((even.diag.cwiseProduct(even.diag) - Eigen::VectorXd::Ones(4)).norm() == 0.0);
}
