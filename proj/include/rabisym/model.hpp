#ifndef RABISYM_MODEL_HPP
#define RABISYM_MODEL_HPP

#include "block.hpp"
#include "params.hpp"

namespace rabisym
{

/// Transformed-frame Hamiltonian H0 and its partner H~ on one sector.
/// H~ equals H0 with the two diagonal boson blocks swapped (the bias
/// signs stay put); it is the Z4-phase conjugate of H0.
struct HamiltonianSet
{
    BlockOp h0;
    BlockOp h_tilde;
    Sector sector;
    ModelParams params;

    /// Max deviation of the diagonal blocks from their Bogoliubov
    /// closed forms (beta a_pm^dag a_pm - (1-beta)/2 +- eps/2) on the
    /// truncation window; a construction cross-check, kept <= 1e-11.
    double lie_form_deviation;
};

/// Lab-frame Hamiltonian, projected to one sector:
/// (Delta/2) sz + (eps/2) sx + omega [a^dag a + g ((a^dag)^2 + a^2) sx].
/// Energies are in lab units; divide by omega to compare with the
/// transformed frame.
BlockOp build_lab_hamiltonian(const ModelParams& params, Sector sector, int states);

/// Transformed frame (omega = 1): diagonal boson blocks
/// a^dag a +- g[(a^dag)^2 + a^2] +- eps/2, off-diagonal -Delta/2.
HamiltonianSet build_h0(const ModelParams& params, Sector sector, int states);

BlockOp build_h_tilde(const ModelParams& params, Sector sector, int states);

} // namespace rabisym

#endif
