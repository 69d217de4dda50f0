#ifndef IFS_FIELD_HPP
#define IFS_FIELD_HPP

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "ifs/weights.hpp"

namespace ifs {

using Complex = std::complex<double>;

/// Truncated state vector over the orthonormal basis e_n = |n>/sqrt(lambda_n),
/// n = 0..n_max. Components pushed past n_max by a creation are dropped and
/// their squared magnitude accumulated in truncation_loss().
class FieldVector {
public:
    explicit FieldVector(int n_max) : c_(static_cast<std::size_t>(n_max) + 1) {}
    static FieldVector basis(int n, int n_max);

    int n_max() const { return static_cast<int>(c_.size()) - 1; }
    Complex& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
    const Complex& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
    std::span<const Complex> coeffs() const { return c_; }

    double norm2() const;
    bool normalized(double tol = 1e-10) const { return std::abs(norm2() - 1.0) <= tol; }
    double truncation_loss() const { return trunc_loss_; }
    void add_truncation_loss(double w) { trunc_loss_ += w; }

private:
    std::vector<Complex> c_;
    double trunc_loss_ = 0.0;
};

/// <f,g>, antilinear in the first argument.
Complex inner(const FieldVector& f, const FieldVector& g);

/// A+: e_n -> sqrt(ratio(n+1)) e_{n+1}; the top component spills into the
/// truncation-loss counter.
FieldVector apply_create(const WeightSequence& seq, const FieldVector& f);

/// A: e_n -> sqrt(ratio(n)) e_{n-1}; e_0 -> 0.
FieldVector apply_annihilate(const WeightSequence& seq, const FieldVector& f);

/// A+A: e_n -> ratio(n) e_n.
FieldVector apply_number(const WeightSequence& seq, const FieldVector& f);

/// Eigenvalue of [A, A+] on e_n: ratio(n+1) - ratio(n).
double commutator_diag(const WeightSequence& seq, int n);

/// Normalized coherent vector f_alpha with c_n = psi^{-1/2} alpha^n/sqrt(lambda_n),
/// psi(x) = sum x^n/lambda_n. Requires the psi tail beyond n_max to be
/// < 1e-12 of the total; throws TruncationError otherwise.
FieldVector coherent_vector(const WeightSequence& seq, Complex alpha, int n_max);

enum class CoherentStyle {
    PaperAmplitudes, // boson F_n = e^{-nbar/2} nbar^{n/2} e^{i zeta n}/sqrt(n!), any lambda
    IFSCoherent,     // coefficients of coherent_vector with alpha = sqrt(nbar) e^{i zeta}
};

struct CoherentSpec {
    double nbar = 0.0;
    double zeta = 0.0;
    CoherentStyle style = CoherentStyle::PaperAmplitudes;
};

/// Initial field amplitudes F_0..F_{n_max}. Tail mass beyond n_max must be
/// < 1e-12; throws TruncationError with a suggested n_max otherwise.
std::vector<Complex> initial_amplitudes(const CoherentSpec& spec, const WeightSequence& seq,
                                        int n_max);

} // namespace ifs

#endif
