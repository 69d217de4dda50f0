#ifndef IFS_EVOLUTION_HPP
#define IFS_EVOLUTION_HPP

#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ifs/field.hpp"
#include "ifs/weights.hpp"

namespace ifs {

/// Physical parameters of the V-type atom / cavity model. Couplings are
/// real; the detuning enters the closed forms and the interaction-picture
/// phases as a single constant.
struct ModelParams {
    double g1 = 1.0;
    double g2 = 1.0;
    double detuning = 0.0;                        // Delta'
    double alpha_atom = std::numbers::pi / 2.0;   // superposition angle, radians
    double psi_atom = 0.0;                        // superposition phase
    double k = 0.0;                               // cavity decay rate
    WeightSequence seq;
    std::vector<Complex> field;                   // F_0..F_{n_max}

    int n_max() const { return static_cast<int>(field.size()) - 1; }
    bool resonant_symmetric() const;              // Delta'=0, g1=g2, alpha=90deg, psi=0
};

enum class EvolveMode { PaperClosedForm, PaperLossy, OracleODE };

std::string mode_token(EvolveMode mode);

/// Block amplitudes C_{a,n-1}, C_{b,n-1}, C_{c,n} for n = 1..n_max, stored
/// 1-based (index 0 unused). Ca/Cb sit on field level n-1, Cc on level n.
struct AmplitudeSet {
    std::vector<Complex> ca, cb, cc;
    double t = 0.0;
    EvolveMode mode = EvolveMode::PaperClosedForm;

    int blocks() const { return static_cast<int>(ca.size()) - 1; }
    double block_norm(int n) const;
    double total_norm() const;
};

/// beta_n = sqrt(Delta'^2/4 + (g1^2+g2^2) ratio(n)).
double rabi_beta(const ModelParams& p, int n);

/// Shared t = 0 state: Ca[n] = cos(alpha/2) F_n, Cb[n] = sin(alpha/2) e^{-i psi} F_n
/// (the F_{n-1} ~ F_n substitution the closed forms build in), Cc[n] = 0.
AmplitudeSet initial_state(const ModelParams& p);

/// Resonant closed form (Delta'=0, g1=g2, alpha=90deg, psi=0):
/// Cc = -i F_n sin(beta t), Ca = Cb = -(F_n/sqrt2)(cos(beta t) - 2).
AmplitudeSet amplitudes_resonant(const ModelParams& p, double t);

/// General closed form with detuning and arbitrary superposition angles.
AmplitudeSet amplitudes_general(const ModelParams& p, double t);

/// Lossy closed form (Delta'=0, g1=g2, k>0) with
/// beta'^2 = 2 g^2 ratio(n) - k^2/16; throws NumericDomainError when
/// beta'^2 <= 0 (overdamped, outside the validated domain).
AmplitudeSet amplitudes_lossy(const ModelParams& p, double t);

/// Fixed-step RK4 on the per-block equations of motion, including the
/// -(k/2) A+A decay term acting on the field level each amplitude occupies.
AmplitudeSet integrate_ode(const ModelParams& p, double t, int steps);

/// Continue an existing OracleODE state to t_to (checkpointed sweeps).
AmplitudeSet integrate_ode_from(const ModelParams& p, const AmplitudeSet& from, double t_to,
                                int steps);

inline constexpr int kDefaultStepsPerUnit = 200;

/// Dispatch by mode; validates mode/params compatibility.
AmplitudeSet evolve(EvolveMode mode, const ModelParams& p, double t,
                    int steps_per_unit = kDefaultStepsPerUnit);

} // namespace ifs

#endif
