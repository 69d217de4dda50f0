#include "ifs/evolution.hpp"

#include <array>
#include <cmath>

#include "ifs/errors.hpp"

namespace ifs {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

} // namespace

bool ModelParams::resonant_symmetric() const {
    return detuning == 0.0 && g1 == g2 &&
           std::abs(alpha_atom - std::numbers::pi / 2.0) < 1e-12 && psi_atom == 0.0;
}

std::string mode_token(EvolveMode mode) {
    switch (mode) {
    case EvolveMode::PaperClosedForm: return "paper-closed-form";
    case EvolveMode::PaperLossy: return "paper-lossy";
    case EvolveMode::OracleODE: return "oracle-ode";
    }
    return "unknown";
}

double AmplitudeSet::block_norm(int n) const {
    return std::norm(ca[n]) + std::norm(cb[n]) + std::norm(cc[n]);
}

double AmplitudeSet::total_norm() const {
    double s = 0.0;
    for (int n = 1; n <= blocks(); ++n)
        s += block_norm(n);
    return s;
}

double rabi_beta(const ModelParams& p, int n) {
    if (n < 1)
        throw std::out_of_range("rabi_beta: n must be >= 1");
    return std::sqrt(p.detuning * p.detuning / 4.0 +
                     (p.g1 * p.g1 + p.g2 * p.g2) * p.seq.ratio(n));
}

namespace {

AmplitudeSet blank_set(const ModelParams& p, double t, EvolveMode mode) {
    AmplitudeSet s;
    const std::size_t size = static_cast<std::size_t>(p.n_max()) + 1;
    s.ca.assign(size, 0.0);
    s.cb.assign(size, 0.0);
    s.cc.assign(size, 0.0);
    s.t = t;
    s.mode = mode;
    return s;
}

} // namespace

AmplitudeSet initial_state(const ModelParams& p) {
    AmplitudeSet s = blank_set(p, 0.0, EvolveMode::PaperClosedForm);
    const double ch = std::cos(p.alpha_atom / 2.0);
    const Complex sh = std::sin(p.alpha_atom / 2.0) * std::exp(-kI * p.psi_atom);
    for (int n = 1; n <= p.n_max(); ++n) {
        s.ca[n] = ch * p.field[n];
        s.cb[n] = sh * p.field[n];
    }
    return s;
}

AmplitudeSet amplitudes_resonant(const ModelParams& p, double t) {
    if (!p.resonant_symmetric())
        throw ConfigError("amplitudes_resonant requires Delta'=0, g1=g2, alpha=90deg, psi=0");
    AmplitudeSet s = blank_set(p, t, EvolveMode::PaperClosedForm);
    for (int n = 1; n <= p.n_max(); ++n) {
        const double beta = rabi_beta(p, n);
        const Complex fn = p.field[n];
        s.cc[n] = -kI * fn * std::sin(beta * t);
        s.ca[n] = -kInvSqrt2 * fn * (std::cos(beta * t) - 2.0);
        s.cb[n] = s.ca[n];
    }
    return s;
}

namespace {

// (e^{i x t} - 1)/x, analytic at x = 0.
Complex phase_integral(double x, double t) {
    if (std::abs(x * t) < 1e-8)
        return kI * t * (1.0 + kI * x * t / 2.0);
    return (std::exp(kI * (x * t)) - 1.0) / x;
}

} // namespace

AmplitudeSet amplitudes_general(const ModelParams& p, double t) {
    AmplitudeSet s = blank_set(p, t, EvolveMode::PaperClosedForm);
    const double ch = std::cos(p.alpha_atom / 2.0);
    const Complex sh = std::sin(p.alpha_atom / 2.0) * std::exp(-kI * p.psi_atom);
    const double half_det = p.detuning / 2.0;
    for (int n = 1; n <= p.n_max(); ++n) {
        const double sr = std::sqrt(p.seq.ratio(n));
        const double beta = rabi_beta(p, n);
        if (beta == 0.0)
            throw NumericDomainError("amplitudes_general: beta_n = 0 (degenerate parameters)");
        const Complex fn = p.field[n];
        const Complex b1 = (p.g1 * sr * ch * fn + p.g2 * sr * sh * fn) / (2.0 * beta);
        s.cc[n] = b1 * (std::exp(-kI * ((half_det + beta) * t)) -
                        std::exp(-kI * ((half_det - beta) * t)));
        const Complex bracket = phase_integral(half_det + beta, t) -
                                phase_integral(half_det - beta, t);
        s.ca[n] = -p.g1 * sr * b1 * bracket + ch * fn;
        s.cb[n] = -p.g2 * sr * b1 * bracket + sh * fn;
    }
    return s;
}

AmplitudeSet amplitudes_lossy(const ModelParams& p, double t) {
    if (p.detuning != 0.0 || p.g1 != p.g2)
        throw ConfigError("amplitudes_lossy requires Delta'=0 and g1=g2");
    if (p.k <= 0.0)
        throw ConfigError("amplitudes_lossy requires k > 0");
    AmplitudeSet s = blank_set(p, t, EvolveMode::PaperLossy);
    const double g = p.g1;
    const double k = p.k;
    for (int n = 1; n <= p.n_max(); ++n) {
        const double r = p.seq.ratio(n);
        const double bp2 = 2.0 * g * g * r - k * k / 16.0;
        if (bp2 <= 0.0)
            throw NumericDomainError("amplitudes_lossy: beta'^2 <= 0 at n = " + std::to_string(n) +
                                     " (overdamped regime, outside the validated domain)");
        const double bp = std::sqrt(bp2);
        const Complex fn = p.field[n];
        const Complex b1 = std::sqrt(r) * fn * g / (std::sqrt(2.0) * bp);
        s.cc[n] = -2.0 * b1 * std::exp(-k * t / 4.0) * std::sin(bp * t);
        const double den = bp2 + k * k / 4.0;
        const double bracket = (std::cos(bp * t) - 2.0) / den + k * k * std::sin(bp * t) / den;
        s.ca[n] = -g * std::sqrt(r) * b1 * bracket + kInvSqrt2 * fn;
        s.cb[n] = s.ca[n];
    }
    return s;
}

namespace {

struct Block {
    Complex a, b, c;
};

// Equations of motion of block n, with the A+A decay acting on the field
// level each amplitude occupies (n-1 for Ca/Cb, n for Cc).
Block rhs(const ModelParams& p, int n, double t, const Block& y) {
    const double sr = std::sqrt(p.seq.ratio(n));
    const Complex eip = std::exp(kI * (p.detuning * t));
    const double da = 0.5 * p.k * p.seq.ratio(n - 1);
    const double dc = 0.5 * p.k * p.seq.ratio(n);
    Block d;
    d.a = -kI * p.g1 * sr * eip * y.c - da * y.a;
    d.b = -kI * p.g2 * sr * eip * y.c - da * y.b;
    d.c = -kI * std::conj(eip) * (p.g1 * y.a + p.g2 * y.b) * sr - dc * y.c;
    return d;
}

Block rk4_step(const ModelParams& p, int n, double t, double h, const Block& y) {
    const Block k1 = rhs(p, n, t, y);
    const Block y2{y.a + 0.5 * h * k1.a, y.b + 0.5 * h * k1.b, y.c + 0.5 * h * k1.c};
    const Block k2 = rhs(p, n, t + 0.5 * h, y2);
    const Block y3{y.a + 0.5 * h * k2.a, y.b + 0.5 * h * k2.b, y.c + 0.5 * h * k2.c};
    const Block k3 = rhs(p, n, t + 0.5 * h, y3);
    const Block y4{y.a + h * k3.a, y.b + h * k3.b, y.c + h * k3.c};
    const Block k4 = rhs(p, n, t + h, y4);
    return {y.a + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
            y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
            y.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c)};
}

bool finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

AmplitudeSet march(const ModelParams& p, const AmplitudeSet& from, double t_to, int steps) {
    if (steps < 1)
        throw ConfigError("integrate_ode: steps must be >= 1");
    AmplitudeSet s = from;
    s.t = t_to;
    s.mode = EvolveMode::OracleODE;
    const double h = (t_to - from.t) / steps;
    for (int n = 1; n <= s.blocks(); ++n) {
        Block y{from.ca[n], from.cb[n], from.cc[n]};
        double t = from.t;
        for (int i = 0; i < steps; ++i) {
            y = rk4_step(p, n, t, h, y);
            t = from.t + (i + 1) * h;
        }
        if (!finite(y.a) || !finite(y.b) || !finite(y.c))
            throw NumericDomainError("integrate_ode: non-finite amplitude in block " +
                                     std::to_string(n));
        s.ca[n] = y.a;
        s.cb[n] = y.b;
        s.cc[n] = y.c;
    }
    return s;
}

} // namespace

AmplitudeSet integrate_ode(const ModelParams& p, double t, int steps) {
    AmplitudeSet start = initial_state(p);
    start.mode = EvolveMode::OracleODE;
    if (t == 0.0)
        return start;
    return march(p, start, t, steps);
}

AmplitudeSet integrate_ode_from(const ModelParams& p, const AmplitudeSet& from, double t_to,
                                int steps) {
    if (t_to == from.t) {
        AmplitudeSet s = from;
        s.mode = EvolveMode::OracleODE;
        return s;
    }
    return march(p, from, t_to, steps);
}

AmplitudeSet evolve(EvolveMode mode, const ModelParams& p, double t, int steps_per_unit) {
    switch (mode) {
    case EvolveMode::PaperClosedForm:
        if (p.k != 0.0)
            throw ConfigError("PaperClosedForm has no decay term; use PaperLossy for k > 0");
        return p.resonant_symmetric() ? amplitudes_resonant(p, t) : amplitudes_general(p, t);
    case EvolveMode::PaperLossy:
        if (p.k <= 0.0)
            throw ConfigError("PaperLossy requires k > 0");
        return amplitudes_lossy(p, t);
    case EvolveMode::OracleODE: {
        const int steps = std::max(1, static_cast<int>(std::lround(std::abs(t) * steps_per_unit)));
        return integrate_ode(p, t, steps);
    }
    }
    throw ConfigError("unknown evolve mode");
}

} // namespace ifs
