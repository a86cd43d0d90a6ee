#ifndef RABISYM_PARAMS_HPP
#define RABISYM_PARAMS_HPP

#include <cmath>
#include <optional>

#include "errors.hpp"

namespace rabisym
{

/// Physical parameters of the asymmetric two-photon Rabi model.
/// All transformed-frame work uses omega = 1; the lab-frame builder
/// rescales by omega. Valid range: delta > 0, 0 < g < 1/2.
struct ModelParams
{
    double delta   = 1.0;  // qubit splitting, units of omega
    double epsilon = 0.0;  // qubit bias, units of omega
    double g       = 0.1;  // coupling, dimensionless
    double omega   = 1.0;  // cavity frequency (lab frame only)

    // renormalized cavity frequency, real for g < 1/2
    double beta() const { return std::sqrt(1.0 - 4.0 * g * g); }

    double bias_ratio() const { return epsilon / (2.0 * beta()); }

    /// Integer N with epsilon = 2 N beta, if the ratio is an exact
    /// (to tol) non-negative integer.
    std::optional<int> bias_index(double tol = 1e-9) const
    {
        const double r = bias_ratio();
        const double n = std::round(r);
        if (n < -0.5 || std::abs(r - n) > tol)
            return std::nullopt;
        return static_cast<int>(n);
    }

    void validate() const
    {
        if (!(delta > 0.0))
            throw InvalidParams("delta must be positive");
        if (!(g > 0.0 && g < 0.5))
            throw InvalidParams("g must lie strictly in (0, 1/2)");
        if (!(omega > 0.0))
            throw InvalidParams("omega must be positive");
    }

    /// Parameters at the symmetry point epsilon = 2 N beta(g).
    static ModelParams at_bias(double delta, double g, int n_bias, double omega = 1.0)
    {
        ModelParams p;
        p.delta = delta;
        p.g     = g;
        p.omega = omega;
        p.epsilon = 2.0 * n_bias * p.beta();
        return p;
    }
};

} // namespace rabisym

#endif
