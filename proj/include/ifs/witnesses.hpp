#ifndef IFS_WITNESSES_HPP
#define IFS_WITNESSES_HPP

#include <complex>
#include <optional>

#include "ifs/evolution.hpp"
#include "ifs/weights.hpp"

namespace ifs {

enum class MomentSource { PaperDiagonal, ExactReduced };

struct MomentSet {
    double m1 = 0.0;   // <A+A>
    double m2 = 0.0;   // <A+A+AA>
    Complex a1 = 0.0;  // <A+>
    Complex a2 = 0.0;  // <A+^2>
    MomentSource source = MomentSource::PaperDiagonal;
};

/// Paper-mode moments: diagonal |C|^2 sums weighted by lambda ratios for
/// m1, m2 and by sqrt-ratios for a1, a2. The factor-2 form 2|Ca|^2 is
/// generalized to |Ca|^2 + |Cb|^2 (identical whenever Ca = Cb). A term is
/// present iff every lambda index in its ratio is >= 0.
MomentSet moments_paper(const AmplitudeSet& amps, const WeightSequence& seq);

/// Literal partial trace over the atom: expectations summed over the three
/// field-component vectors phi_a, phi_b (levels n-1) and phi_c (levels n),
/// using the ladder actions. a1, a2 are genuinely complex here.
MomentSet moments_exact(const AmplitudeSet& amps, const WeightSequence& seq);

inline constexpr double kMeanPhotonFloor = 1e-14;

/// Q = m2/m1 - m1; empty when the mean photon number is below the floor.
std::optional<double> mandel_q(const MomentSet& m);

/// The closed-form Q(gt) for an initial coherent field, evaluated term by
/// term with the per-n angle theta_n = sqrt(2 ratio(n)) gt and Poisson
/// weights nbar^n/n! e^{-nbar}.
std::optional<double> mandel_q_closed(const WeightSequence& seq, double nbar, double gt);

/// S_opt = -2|a2 - a1^2| + 2 m1 - 2|a1|^2; negative values witness squeezing.
double squeezing_opt(const MomentSet& m);

/// Level-n reference scale of the deformed uncertainty relation:
/// ratio(n+1) - ratio(n).
double deformed_uncertainty_floor(const WeightSequence& seq, int n);

} // namespace ifs

#endif
