#ifndef RABISYM_FOCK_HPP
#define RABISYM_FOCK_HPP

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "errors.hpp"
#include "params.hpp"

namespace rabisym
{

/// Z2 sector of the bosonic Hilbert space under exp(i pi a^dag a):
/// Even holds Fock states |2k>, Odd holds |2k+1>.
enum class Sector
{
    Even,
    Odd
};

/// Truncated basis of one Z2 sector.
struct FockBasis
{
    Sector sector;
    int states; // number of retained sector states

    int fock_index(int k) const { return sector == Sector::Even ? 2 * k : 2 * k + 1; }

    // the underlying full Fock cutoff this sector basis was cut from
    int full_cutoff() const { return 2 * states; }

    bool operator==(const FockBasis&) const = default;
};

/// Dense real operator on either the full truncated Fock basis
/// (basis == nullopt) or one sector basis.
struct BosonOp
{
    Eigen::MatrixXd mat;
    std::optional<FockBasis> basis; // nullopt: full Fock space {0..dim-1}

    int dim() const { return static_cast<int>(mat.rows()); }

    /// Fock occupation of basis state k.
    int fock_index(int k) const { return basis ? basis->fock_index(k) : k; }
};

// --- full-space ladder operators ------------------------------------------

/// a|n> = sqrt(n)|n-1> on {0..cutoff-1}; the top state is truncated,
/// no wraparound.
BosonOp annihilation(int cutoff);

/// a^dag = transpose of a in this real representation.
BosonOp creation(int cutoff);

// --- Bogoliubov modes -------------------------------------------------------

struct BogoliubovCoeffs
{
    double u;
    double v;
};

/// u = sqrt((1+beta)/(2 beta)), v = sqrt((1-beta)/(2 beta)).
BogoliubovCoeffs bogoliubov_coeffs(const ModelParams& params);

/// a_+ = u a + v a^dag and a_- = u a - v a^dag on the full basis.
std::pair<BosonOp, BosonOp> bogoliubov_pair(const ModelParams& params, int cutoff);

// --- su(1,1) generators -----------------------------------------------------

struct Su11Generators
{
    BosonOp k0;     // (b^dag b + 1/2)/2
    BosonOp kplus;  // (b^dag)^2 / 2
    BosonOp kminus; // b^2 / 2
};

Su11Generators su11_generators(const BosonOp& b, const BosonOp& b_dag);

// --- sector projection ------------------------------------------------------

/// Restrict a sector-preserving full-space operator to one sector.
/// Throws SectorViolation if any cross-sector element exceeds 1e-14.
BosonOp project_sector(const BosonOp& op, Sector sector);

/// Embed a sector operator back into the full space (zero elsewhere).
BosonOp embed_sector(const BosonOp& op);

// --- Z4 phase ---------------------------------------------------------------

/// exp(i pi a^dag a / 2) restricted to one sector, factored as a real
/// diagonal (-1)^k times a global phase i^quarter_turns (0 for Even,
/// 1 for Odd).
struct Z4Phase
{
    Eigen::VectorXd diag;
    int quarter_turns;
};

Z4Phase z4_phase(Sector sector, int states);

// --- truncation windows -----------------------------------------------------

/// Number of leading basis states whose Fock index stays at least
/// `margin` below the full cutoff. Identities involving operators that
/// shift the Fock index by at most s are exact there with margin s + 2.
int window_states(const BosonOp& op, int margin);
int window_states(const FockBasis& basis, int margin);

/// Frobenius norm of the leading window x window block of m.
double window_norm(const Eigen::MatrixXd& m, int window);

} // namespace rabisym

#endif
