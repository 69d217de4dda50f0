#include "ifs/witnesses.hpp"

#include <cmath>

#include "ifs/errors.hpp"
#include "ifs/field.hpp"

namespace ifs {

MomentSet moments_paper(const AmplitudeSet& amps, const WeightSequence& seq) {
    MomentSet m;
    m.source = MomentSource::PaperDiagonal;
    double a1 = 0.0, a2 = 0.0;
    for (int n = 1; n <= amps.blocks(); ++n) {
        const double w_ab = std::norm(amps.ca[n]) + std::norm(amps.cb[n]);
        const double w_c = std::norm(amps.cc[n]);
        m.m1 += w_ab * seq.pair_ratio(n - 1, n - 2) + w_c * seq.pair_ratio(n, n - 1);
        m.m2 += w_ab * seq.pair_ratio(n - 1, n - 3) + w_c * seq.pair_ratio(n, n - 2);
        a1 += w_ab * seq.sqrt_pair_ratio(n, n - 1) + w_c * seq.sqrt_pair_ratio(n + 1, n);
        a2 += w_ab * seq.sqrt_pair_ratio(n + 1, n - 1) + w_c * seq.sqrt_pair_ratio(n + 2, n);
    }
    m.a1 = a1;
    m.a2 = a2;
    return m;
}

MomentSet moments_exact(const AmplitudeSet& amps, const WeightSequence& seq) {
    const int top = amps.blocks(); // field levels 0..top
    // phi_a, phi_b hold Ca/Cb at level n-1; phi_c holds Cc at level n
    FieldVector pa(top), pb(top), pc(top);
    for (int n = 1; n <= top; ++n) {
        pa[n - 1] = amps.ca[n];
        pb[n - 1] = amps.cb[n];
        pc[n] = amps.cc[n];
    }
    MomentSet m;
    m.source = MomentSource::ExactReduced;
    for (const FieldVector* phi : {&pa, &pb, &pc}) {
        const FieldVector af = apply_annihilate(seq, *phi);
        const FieldVector aaf = apply_annihilate(seq, af);
        m.m1 += af.norm2();
        m.m2 += aaf.norm2();
        // <phi|A+|phi> = <A phi, phi>, likewise for A+^2
        m.a1 += inner(af, *phi);
        m.a2 += inner(aaf, *phi);
    }
    return m;
}

std::optional<double> mandel_q(const MomentSet& m) {
    if (m.m1 <= kMeanPhotonFloor)
        return std::nullopt;
    return m.m2 / m.m1 - m.m1;
}

std::optional<double> mandel_q_closed(const WeightSequence& seq, double nbar, double gt) {
    if (nbar < 0.0)
        throw ConfigError("nbar must be >= 0");
    const int top = seq.n_max();
    // Poisson tail beyond the table must be negligible
    {
        double p = std::exp(-nbar);
        for (int n = 1; n <= top; ++n)
            p *= nbar / n;
        const double rho = nbar / (top + 1);
        if (!(rho < 1.0) || !(p * rho / (1.0 - rho) < 1e-12))
            throw TruncationError("mandel_q_closed: Poisson tail beyond n_max exceeds 1e-12",
                                  2 * top + 8);
    }
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double p = std::exp(-nbar); // nbar^n/n! e^{-nbar}, by recurrence
    for (int n = 1; n <= top; ++n) {
        p *= nbar / n;
        const double theta = std::sqrt(2.0 * seq.ratio(n)) * gt;
        const double c2 = std::pow(std::cos(theta) - 2.0, 2);
        const double s2 = std::pow(std::sin(theta), 2);
        A += p * c2 * seq.pair_ratio(n - 1, n - 3);
        B += p * s2 * seq.pair_ratio(n, n - 2);
        C += p * c2 * seq.pair_ratio(n - 1, n - 2);
        D += p * s2 * seq.pair_ratio(n, n - 1);
    }
    if (C + D < kMeanPhotonFloor)
        return std::nullopt;
    return (A + B) / (C + D) - (C + D);
}

double squeezing_opt(const MomentSet& m) {
    return -2.0 * std::abs(m.a2 - m.a1 * m.a1) + 2.0 * m.m1 - 2.0 * std::norm(m.a1);
}

double deformed_uncertainty_floor(const WeightSequence& seq, int n) {
    return commutator_diag(seq, n);
}

} // namespace ifs
