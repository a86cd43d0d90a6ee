#include "rabisym/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "rabisym/model.hpp"
#include "rabisym/symmetry.hpp"

namespace rabisym
{

EigenSystem eigensolve(const BlockOp& h)
{
    const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
    if ((h.mat - h.mat.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NotSymmetric("eigensolve: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h.mat + h.mat.transpose()));
    return {es.eigenvalues(), es.eigenvectors()};
}

int converged_prefix(const ModelParams& params, Sector sector, int states,
                     const Eigen::VectorXd& evals, double tol)
{
    const int bigger = states + (states + 3) / 4;
    const EigenSystem ref = eigensolve(build_h0(params, sector, bigger).h0);
    int count = 0;
    while (count < evals.size() && count < ref.values.size() &&
           std::abs(evals(count) - ref.values(count)) < tol)
        ++count;
    return count;
}

ModelParams SweepConfig::params_at(double g) const
{
    ModelParams p;
    p.delta = delta;
    p.g = g;
    p.epsilon = mode == BiasMode::FixedRatio ? 2.0 * bias * p.beta() : bias;
    return p;
}

std::vector<double> SweepConfig::linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

bool SpectrumScan::labeled() const
{
    for (const auto& point : labels)
        for (int l : point)
            if (l != kUnlabeled)
                return true;
    return false;
}

namespace
{

int worker_count(int requested, int tasks)
{
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char* cap = std::getenv("RABI_SYM_THREADS"))
    {
        const int c = std::atoi(cap);
        if (c > 0)
            n = std::min(n, c);
    }
    return std::min(n, tasks);
}

struct PointResult
{
    std::vector<double> levels;
    std::vector<int> labels;
};

PointResult evaluate_point(const SweepConfig& cfg, double g)
{
    const ModelParams params = cfg.params_at(g);
    const double beta = params.beta();
    const EigenSystem es = eigensolve(build_h0(params, cfg.sector, cfg.states).h0);

    PointResult res;
    const int n = std::min<int>(cfg.n_levels, static_cast<int>(es.values.size()));
    res.levels.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        res.levels[static_cast<size_t>(i)] = (es.values(i) + 0.5) / beta;

    res.labels.assign(static_cast<size_t>(n), kUnlabeled);
    if (const auto n_bias = params.bias_index())
    {
        const SymmetryOperator j = build_symmetry(*n_bias, params, cfg.sector, cfg.states);
        res.labels = parity_labels(j, es.values, es.vectors, n);
    }
    return res;
}

} // namespace

SpectrumScan sweep(const SweepConfig& config)
{
    const auto& grid = config.g_grid;
    for (double g : grid)
        if (!(g > 0.0 && g < 0.5))
            throw InvalidParams("sweep grid must lie inside (0, 0.5)");

    SpectrumScan scan;
    scan.config = config;
    scan.g_grid = grid;
    const int n_pts = static_cast<int>(grid.size());
    scan.levels.resize(static_cast<size_t>(n_pts));
    scan.labels.resize(static_cast<size_t>(n_pts));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    auto run = [&]() {
        for (int i = next.fetch_add(1); i < n_pts && !failed; i = next.fetch_add(1))
        {
            try
            {
                PointResult r = evaluate_point(config, grid[static_cast<size_t>(i)]);
                scan.levels[static_cast<size_t>(i)] = std::move(r.levels);
                scan.labels[static_cast<size_t>(i)] = std::move(r.labels);
            }
            catch (...)
            {
                failed = true;
                throw;
            }
        }
    };

    const int workers = worker_count(config.threads, n_pts);
    if (workers <= 1)
    {
        run();
    }
    else
    {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                try
                {
                    run();
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }
    return scan;
}

namespace
{

// rescaled gap between levels i and i+1 at coupling g, plus labels
struct GapSample
{
    double gap;
    int label_lo;
    int label_hi;
};

GapSample gap_at(const SweepConfig& cfg, double g, int level)
{
    PointResult r = evaluate_point(cfg, g);
    return {r.levels[static_cast<size_t>(level) + 1] - r.levels[static_cast<size_t>(level)],
            r.labels[static_cast<size_t>(level)], r.labels[static_cast<size_t>(level) + 1]};
}

} // namespace

std::vector<CrossingEvent> detect_crossings(const SpectrumScan& scan,
                                            const CrossingOptions& opts)
{
    const auto& grid = scan.g_grid;
    const int n_pts = static_cast<int>(grid.size());
    if (n_pts < 3)
        throw InvalidParams("detect_crossings needs at least 3 grid points");

    SweepConfig cfg = scan.config;
    cfg.n_levels = 0;
    for (const auto& point : scan.levels)
        cfg.n_levels = std::max(cfg.n_levels, static_cast<int>(point.size()));

    const bool has_labels = scan.labeled();
    std::vector<CrossingEvent> events;

    const int n_levels = cfg.n_levels;
    for (int lvl = 0; lvl + 1 < n_levels; ++lvl)
    {
        auto gap = [&](int p) {
            return scan.levels[static_cast<size_t>(p)][static_cast<size_t>(lvl) + 1] -
                   scan.levels[static_cast<size_t>(p)][static_cast<size_t>(lvl)];
        };
        for (int p = 1; p + 1 < n_pts; ++p)
        {
            if (!(gap(p) <= gap(p - 1) && gap(p) < gap(p + 1)))
                continue;

            // golden-section refinement of the local gap minimum
            const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double a = grid[static_cast<size_t>(p) - 1];
            double b = grid[static_cast<size_t>(p) + 1];
            double x1 = b - phi * (b - a);
            double x2 = a + phi * (b - a);
            double f1 = gap_at(cfg, x1, lvl).gap;
            double f2 = gap_at(cfg, x2, lvl).gap;
            while (b - a > opts.interval_tol && std::min(f1, f2) > opts.gap_tol)
            {
                if (f1 < f2)
                {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = gap_at(cfg, x1, lvl).gap;
                }
                else
                {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = gap_at(cfg, x2, lvl).gap;
                }
            }
            const double g_star = f1 < f2 ? x1 : x2;
            const GapSample best = gap_at(cfg, g_star, lvl);

            CrossingEvent ev;
            ev.level_lo = lvl;
            ev.level_hi = lvl + 1;
            ev.g_star = g_star;
            ev.min_gap = best.gap;
            ev.label_lo = best.label_lo;
            ev.label_hi = best.label_hi;
            if (best.gap < opts.true_threshold)
            {
                if (!has_labels)
                    throw UnlabeledScan("sub-threshold gap at g = " + std::to_string(g_star) +
                                        " but the scan carries no parity labels");
                ev.is_true = best.label_lo != best.label_hi;
            }
            events.push_back(ev);
        }
    }
    return events;
}

} // namespace rabisym
