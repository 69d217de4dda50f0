#include "ifs/field.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ifs/errors.hpp"

namespace ifs {

FieldVector FieldVector::basis(int n, int n_max) {
    FieldVector f(n_max);
    f[n] = 1.0;
    return f;
}

double FieldVector::norm2() const {
    double s = 0.0;
    for (const auto& c : c_)
        s += std::norm(c);
    return s;
}

Complex inner(const FieldVector& f, const FieldVector& g) {
    const int top = std::min(f.n_max(), g.n_max());
    Complex s = 0.0;
    for (int n = 0; n <= top; ++n)
        s += std::conj(f[n]) * g[n];
    return s;
}

FieldVector apply_create(const WeightSequence& seq, const FieldVector& f) {
    const int top = f.n_max();
    FieldVector out(top);
    out.add_truncation_loss(f.truncation_loss());
    for (int n = 0; n < top; ++n)
        out[n + 1] = std::sqrt(seq.ratio(n + 1)) * f[n];
    // component pushed past the basis is dropped, its weight recorded
    out.add_truncation_loss(seq.ratio(top + 1) * std::norm(f[top]));
    return out;
}

FieldVector apply_annihilate(const WeightSequence& seq, const FieldVector& f) {
    const int top = f.n_max();
    FieldVector out(top);
    out.add_truncation_loss(f.truncation_loss());
    for (int n = 1; n <= top; ++n)
        out[n - 1] = std::sqrt(seq.ratio(n)) * f[n];
    return out;
}

FieldVector apply_number(const WeightSequence& seq, const FieldVector& f) {
    const int top = f.n_max();
    FieldVector out(top);
    out.add_truncation_loss(f.truncation_loss());
    for (int n = 0; n <= top; ++n)
        out[n] = seq.ratio(n) * f[n];
    return out;
}

double commutator_diag(const WeightSequence& seq, int n) {
    if (n < 0)
        throw std::out_of_range("commutator_diag: n must be >= 0");
    return seq.ratio(n + 1) - seq.ratio(n);
}

namespace {

// Geometric bound on the remaining tail of a series whose term ratio at the
// cutoff is rho < 1: tail <= last_term * rho/(1-rho).
double tail_bound(double last_term, double rho) {
    if (rho >= 1.0)
        return std::numeric_limits<double>::infinity();
    return last_term * rho / (1.0 - rho);
}

} // namespace

FieldVector coherent_vector(const WeightSequence& seq, Complex alpha, int n_max) {
    if (n_max > seq.n_max())
        throw std::out_of_range("coherent_vector: n_max exceeds the weight table");
    const double x = std::norm(alpha);
    // psi(x) = sum x^n/lambda_n over the levels that exist (lambda_n > 0)
    std::vector<double> term(static_cast<std::size_t>(n_max) + 1, 0.0);
    double psi = 0.0;
    double xn = 1.0;
    int last_live = -1;
    for (int n = 0; n <= n_max; ++n) {
        const double lam = seq.weight(n);
        if (lam > 0.0) {
            term[n] = xn / lam;
            psi += term[n];
            last_live = n;
        }
        xn *= x;
    }
    const bool finite_space = seq.weight(std::min(n_max + 1, seq.table_max())) == 0.0;
    if (x > 0.0 && !finite_space) {
        const double rho = x / seq.ratio(n_max + 1);
        const double tail = tail_bound(term[last_live], rho);
        if (!(tail < 1e-12 * psi)) {
            int extra = 16;
            if (rho < 1.0) {
                const double need = 1e-12 * psi * (1.0 - rho) / (term[last_live] * rho);
                extra = static_cast<int>(std::ceil(std::log(need) / std::log(rho))) + 1;
            }
            throw TruncationError("coherent_vector: psi tail beyond n_max exceeds 1e-12; "
                                  "suggest n_max >= " + std::to_string(n_max + std::max(extra, 1)),
                                  n_max + std::max(extra, 1));
        }
    }
    FieldVector f(n_max);
    const double inv_sqrt_psi = 1.0 / std::sqrt(psi);
    Complex an = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        const double lam = seq.weight(n);
        if (lam > 0.0)
            f[n] = inv_sqrt_psi * an / std::sqrt(lam);
        an *= alpha;
    }
    return f;
}

std::vector<Complex> initial_amplitudes(const CoherentSpec& spec, const WeightSequence& seq,
                                        int n_max) {
    if (spec.nbar < 0.0)
        throw ConfigError("nbar must be >= 0");
    if (spec.style == CoherentStyle::IFSCoherent) {
        const Complex alpha = std::sqrt(spec.nbar) * std::exp(Complex(0.0, spec.zeta));
        const FieldVector f = coherent_vector(seq, alpha, n_max);
        return {f.coeffs().begin(), f.coeffs().end()};
    }
    // boson amplitudes regardless of lambda
    std::vector<Complex> F(static_cast<std::size_t>(n_max) + 1);
    double mag = std::exp(-spec.nbar / 2.0); // |F_n|, by recurrence
    for (int n = 0; n <= n_max; ++n) {
        F[n] = mag * std::exp(Complex(0.0, spec.zeta * n));
        mag *= std::sqrt(spec.nbar / (n + 1));
    }
    // Poisson tail mass beyond n_max
    const double p_last = std::norm(F[n_max]);
    const double rho = spec.nbar / (n_max + 1);
    if (!(tail_bound(p_last, rho) < 1e-12)) {
        int extra = 16;
        if (rho < 1.0) {
            const double need = 1e-12 * (1.0 - rho) / (p_last * rho);
            extra = static_cast<int>(std::ceil(std::log(need) / std::log(rho))) + 1;
        }
        throw TruncationError("initial_amplitudes: Poisson tail beyond n_max exceeds 1e-12; "
                              "suggest n_max >= " + std::to_string(n_max + std::max(extra, 1)),
                              n_max + std::max(extra, 1));
    }
    return F;
}

} // namespace ifs
