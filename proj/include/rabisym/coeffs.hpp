#ifndef RABISYM_COEFFS_HPP
#define RABISYM_COEFFS_HPP

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "fock.hpp"
#include "params.hpp"

namespace rabisym
{

enum class Elem
{
    A,
    B,
    C,
    D
};

constexpr std::array<Elem, 4> all_elems{Elem::A, Elem::B, Elem::C, Elem::D};

char elem_name(Elem e);
Elem elem_from_name(char c);

/// Coefficients M_{n,m} of the four Q elements in the basis
/// (K_+^{a+})^{n/2} (K_-^{a-})^{m/2}. Only n + m even, n + m <= 2N
/// can be nonzero; missing entries read as zero.
struct CoeffTable
{
    int n_bias = 0;
    std::map<std::tuple<Elem, int, int>, double> entries;

    /// relative residual of the linear system that produced the table
    /// (zero for closed forms)
    double residual = 0.0;

    /// dimension of the residual-zero solution space; > 1 means the
    /// normalization did not fix the operator uniquely
    int nullity = 1;

    bool gauge_ambiguous() const { return nullity > 1; }

    double get(Elem e, int n, int m) const;
    void set(Elem e, int n, int m, double value);

    double max_abs() const;
    double max_abs_diff(const CoeffTable& other) const;

    /// Largest hermiticity-relation violation:
    /// M_{n,m} (-1)^{(n-m)/2} vs M_{m,n} (B against C).
    double hermiticity_violation() const;
};

/// Lattice points (n, m) with n, m >= 0, n + m even, n + m <= max_sum.
std::vector<std::pair<int, int>> coeff_lattice(int max_sum);

/// Hard-coded tables for N = 0..3. Throws UnsupportedBias beyond that.
CoeffTable closed_form_coeffs(int n_bias, const ModelParams& params);

/// Solve the coefficient recurrences at bias epsilon = 2 N beta
/// (params.epsilon is ignored; only delta and g enter). Normalization
/// B_{0,2N} = 1; hermiticity imposed; the top-tier vanishing
/// A_{n,2N-n} = D_{n,2N-n} = 0 emerges from the system itself.
/// Throws NoSolution if the residual exceeds 1e-8.
CoeffTable solve_recurrence(int n_bias, const ModelParams& params);

/// Recurrence-independent oracle: SVD nullspace of the linear map
/// coefficients -> windowed matrix elements of Q H0 - H~ Q, built at
/// the given sector and cutoff with params.epsilon as-is. Throws
/// EmptyNullspace when no symmetry exists at these parameters.
CoeffTable nullspace_symmetry(int n_bias, const ModelParams& params, Sector sector,
                              int states);

} // namespace rabisym

#endif
