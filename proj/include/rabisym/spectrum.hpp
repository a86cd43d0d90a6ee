#ifndef RABISYM_SPECTRUM_HPP
#define RABISYM_SPECTRUM_HPP

#include <vector>

#include "block.hpp"
#include "params.hpp"

namespace rabisym
{

struct EigenSystem
{
    Eigen::VectorXd values; // ascending
    Eigen::MatrixXd vectors;
};

/// Full real-symmetric eigendecomposition; throws NotSymmetric if the
/// input deviates from its transpose by more than 1e-10 (relative).
EigenSystem eigensolve(const BlockOp& h);

/// Number of leading eigenvalues that shift by less than tol when the
/// sector cutoff is increased by 25%.
int converged_prefix(const ModelParams& params, Sector sector, int states,
                     const Eigen::VectorXd& evals, double tol = 1e-9);

// --- sweeps -------------------------------------------------------------

enum class BiasMode
{
    FixedEpsilon, // epsilon held constant across the grid
    FixedRatio    // epsilon = 2 * ratio * beta(g) at every grid point
};

struct SweepConfig
{
    double delta = 1.0;
    BiasMode mode = BiasMode::FixedRatio;
    double bias = 0.0; // epsilon or the ratio, depending on mode
    std::vector<double> g_grid;
    Sector sector = Sector::Even;
    int states = 120;
    int n_levels = 8;
    int threads = 0; // 0: hardware default (capped by RABI_SYM_THREADS)

    ModelParams params_at(double g) const;
    std::vector<double> grid() const { return g_grid; }

    static std::vector<double> linspace(double lo, double hi, int n);
};

constexpr int kUnlabeled = 0;

/// Energy curves over the g grid, rescaled as (E + 1/2)/beta. Labels
/// are +-1 where epsilon/(2 beta) is an integer, kUnlabeled otherwise.
struct SpectrumScan
{
    SweepConfig config;
    std::vector<double> g_grid;
    std::vector<std::vector<double>> levels; // [point][level], ascending
    std::vector<std::vector<int>> labels;    // [point][level]

    bool labeled() const;
};

SpectrumScan sweep(const SweepConfig& config);

// --- crossing detection ---------------------------------------------------

struct CrossingEvent
{
    int level_lo = 0;
    int level_hi = 0;     // always level_lo + 1
    double g_star = 0.0;  // refined gap-minimum location
    double min_gap = 0.0; // rescaled gap at g_star
    bool is_true = false; // gap below threshold and labels differ
    int label_lo = kUnlabeled;
    int label_hi = kUnlabeled;
};

struct CrossingOptions
{
    double gap_tol = 1e-10;       // refinement stops below this gap
    double interval_tol = 1e-12;  // or below this g interval
    double true_threshold = 1e-6; // rescaled-gap cut for a true crossing
};

/// Locate local gap minima between adjacent levels, refine each by
/// golden-section search, and classify. Throws UnlabeledScan when a
/// sub-threshold gap is found but the scan carries no parity labels.
std::vector<CrossingEvent> detect_crossings(const SpectrumScan& scan,
                                            const CrossingOptions& opts = {});

} // namespace rabisym

#endif
