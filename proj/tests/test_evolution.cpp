#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ifs/errors.hpp"
#include "ifs/evolution.hpp"

using ifs::AmplitudeSet;
using ifs::Complex;
using ifs::EvolveMode;
using ifs::ModelParams;
using ifs::WeightFamily;
using ifs::WeightSequence;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams make_params(WeightFamily family, double nbar, int n_max = 40, double q = 0.5) {
    ModelParams p;
    p.seq = WeightSequence::make(family, n_max, q);
    p.field = ifs::initial_amplitudes({nbar, 0.0}, p.seq, n_max);
    return p;
}

double max_block_dev(const AmplitudeSet& x, const AmplitudeSet& y) {
    double dev = 0.0;
    for (int n = 1; n <= x.blocks(); ++n) {
        dev = std::max(dev, std::abs(x.ca[n] - y.ca[n]));
        dev = std::max(dev, std::abs(x.cb[n] - y.cb[n]));
        dev = std::max(dev, std::abs(x.cc[n] - y.cc[n]));
    }
    return dev;
}

} // namespace

TEST_CASE("rabi_beta") {
    auto p = make_params(WeightFamily::Factorial, 0.5);
    SUBCASE("boson limit sqrt(2n) g") {
        p.g1 = p.g2 = 0.7;
        for (int n = 1; n <= 10; ++n)
            CHECK(ifs::rabi_beta(p, n) == doctest::Approx(std::sqrt(2.0 * n) * 0.7).epsilon(1e-12));
    }
    SUBCASE("pure detuning") {
        p.g1 = p.g2 = 0.0;
        p.detuning = 2.0;
        CHECK(ifs::rabi_beta(p, 3) == doctest::Approx(1.0));
    }
    SUBCASE("qbracket value") {
        auto pq = make_params(WeightFamily::QBracket, 0.5);
        CHECK(ifs::rabi_beta(pq, 2) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }
}

TEST_CASE("resonant closed form") {
    auto p = make_params(WeightFamily::Factorial, 0.5);

    SUBCASE("t = 0 is the shared initial state") {
        const auto amps = ifs::amplitudes_resonant(p, 0.0);
        for (int n = 1; n <= p.n_max(); ++n) {
            CHECK(std::abs(amps.ca[n] - p.field[n] / std::sqrt(2.0)) < 1e-15);
            CHECK(amps.cb[n] == amps.ca[n]);
            CHECK(amps.cc[n] == Complex(0.0));
        }
    }

    SUBCASE("beta t = pi/2 for the n = 1 block") {
        const double t = (kPi / 2.0) / std::sqrt(2.0);
        const auto amps = ifs::amplitudes_resonant(p, t);
        CHECK(std::abs(amps.cc[1]) == doctest::Approx(std::abs(p.field[1])).epsilon(1e-12));
        CHECK(amps.ca[1].real() ==
              doctest::Approx(std::sqrt(2.0) * p.field[1].real()).epsilon(1e-12));
    }

    SUBCASE("block norm identity |F_n|^2 (5 - 4 cos beta t)") {
        for (double t : {0.0, 0.3, 2.2, 17.0, 50.0}) {
            const auto amps = ifs::amplitudes_resonant(p, t);
            for (int n = 1; n <= p.n_max(); ++n) {
                const double beta = ifs::rabi_beta(p, n);
                const double expect = std::norm(p.field[n]) * (5.0 - 4.0 * std::cos(beta * t));
                CHECK(amps.block_norm(n) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
        // block norm at beta t = pi is 9 |F_n|^2
        const double t1 = kPi / ifs::rabi_beta(p, 1);
        CHECK(ifs::amplitudes_resonant(p, t1).block_norm(1) ==
              doctest::Approx(9.0 * std::norm(p.field[1])).epsilon(1e-12));
    }

    SUBCASE("requires the resonant-symmetric parameter point") {
        p.detuning = 0.4;
        CHECK_THROWS_AS(ifs::amplitudes_resonant(p, 1.0), ifs::ConfigError);
    }
}

TEST_CASE("general closed form") {
    SUBCASE("t = 0 carries only the superposition terms") {
        auto p = make_params(WeightFamily::QBracket, 0.5);
        p.g1 = 0.8;
        p.g2 = 1.3;
        p.detuning = 0.7;
        p.alpha_atom = 1.1;
        p.psi_atom = 0.4;
        const auto amps = ifs::amplitudes_general(p, 0.0);
        for (int n = 1; n <= p.n_max(); ++n) {
            CHECK(std::abs(amps.ca[n] - std::cos(0.55) * p.field[n]) < 1e-14);
            CHECK(std::abs(amps.cb[n] - std::sin(0.55) * std::exp(Complex(0, -0.4)) * p.field[n]) <
                  1e-14);
            CHECK(std::abs(amps.cc[n]) == 0.0);
        }
    }

    SUBCASE("reduces to the resonant form at alpha=90deg, psi=0, Delta'=0, g1=g2") {
        for (const auto family : {WeightFamily::Factorial, WeightFamily::QBracket}) {
            auto p = make_params(family, 0.5);
            for (double t : {0.0, 3.3, 17.7}) {
                const auto gen = ifs::amplitudes_general(p, t);
                const auto res = ifs::amplitudes_resonant(p, t);
                CHECK(max_block_dev(gen, res) < 1e-12);
            }
        }
    }

    SUBCASE("two-level Jaynes-Cummings sub-case") {
        auto p = make_params(WeightFamily::Factorial, 0.5);
        p.g2 = 0.0;
        p.alpha_atom = 0.0;
        const double t = 4.2;
        const auto amps = ifs::amplitudes_general(p, t);
        for (int n = 1; n <= p.n_max(); ++n) {
            const double beta = p.g1 * std::sqrt(p.seq.ratio(n));
            const Complex expect = -Complex(0, 1) * p.field[n] * std::sin(beta * t);
            CHECK(std::abs(amps.cc[n] - expect) < 1e-12);
        }
    }

    SUBCASE("degenerate beta = 0 is rejected") {
        auto p = make_params(WeightFamily::Factorial, 0.5);
        p.g1 = p.g2 = 0.0;
        p.detuning = 0.0;
        CHECK_THROWS_AS(ifs::amplitudes_general(p, 1.0), ifs::NumericDomainError);
    }
}

TEST_CASE("lossy closed form") {
    auto p = make_params(WeightFamily::Factorial, 0.5);
    p.k = 0.1;

    SUBCASE("beta-prime arithmetic") {
        // beta'^2 = 2 g^2 ratio(1) - k^2/16 at g=1, k=0.1
        CHECK(std::sqrt(2.0 - 0.01 / 16.0) == doctest::Approx(1.413993).epsilon(1e-6));
    }

    SUBCASE("t = 0 keeps the formula's correction term") {
        const auto amps = ifs::amplitudes_lossy(p, 0.0);
        CHECK(amps.cc[1] == Complex(0.0));
        // frozen from an independent straight-line evaluation of the formula
        CHECK(amps.ca[1].real() == doctest::Approx(0.5269667683620416).epsilon(1e-12));
        CHECK(amps.ca[1].imag() == 0.0);

        // the t = 0 correction: -g sqrt(r) B1 (-1)/(beta'^2+k^2/4) + F_n/sqrt2
        const double r = 1.0;
        const double bp2 = 2.0 * r - 0.01 / 16.0;
        const double b1 = std::sqrt(r) * p.field[1].real() / (std::sqrt(2.0) * std::sqrt(bp2));
        const double expect =
            -std::sqrt(r) * b1 * (-1.0) / (bp2 + 0.01 / 4.0) + p.field[1].real() / std::sqrt(2.0);
        CHECK(amps.ca[1].real() == doctest::Approx(expect).epsilon(1e-14));
    }

    SUBCASE("continuous in k at fixed t (but not equal to the lossless form)") {
        const double t = 7.0;
        auto p_small = p;
        p_small.k = 1e-6;
        const auto small_k = ifs::amplitudes_lossy(p_small, t);

        // analytic k -> 0 limit of the lossy formula
        AmplitudeSet limit = small_k;
        for (int n = 1; n <= p.n_max(); ++n) {
            const double r = p.seq.ratio(n);
            const double bp = std::sqrt(2.0 * r);
            const Complex b1 = std::sqrt(r) * p.field[n] / (std::sqrt(2.0) * bp);
            limit.cc[n] = -2.0 * b1 * std::sin(bp * t);
            limit.ca[n] = -std::sqrt(r) * b1 * (std::cos(bp * t) - 2.0) / (bp * bp) +
                          p.field[n] / std::sqrt(2.0);
            limit.cb[n] = limit.ca[n];
        }
        CHECK(max_block_dev(small_k, limit) < 1e-5);

        // and that limit differs from the lossless closed form: Cc picks up a
        // - sin factor instead of -i sin
        const auto res = ifs::amplitudes_resonant(make_params(WeightFamily::Factorial, 0.5), t);
        CHECK(std::abs(limit.cc[1] - res.cc[1]) > 0.01);
    }

    SUBCASE("overdamped regime is rejected") {
        auto pk = make_params(WeightFamily::Factorial, 0.5);
        pk.k = 6.0; // beta'^2 = 2 - 36/16 < 0 at n = 1
        CHECK_THROWS_AS(ifs::amplitudes_lossy(pk, 1.0), ifs::NumericDomainError);
    }

    SUBCASE("preconditions") {
        auto bad = p;
        bad.k = 0.0;
        CHECK_THROWS_AS(ifs::amplitudes_lossy(bad, 1.0), ifs::ConfigError);
        auto det = p;
        det.detuning = 0.2;
        CHECK_THROWS_AS(ifs::amplitudes_lossy(det, 1.0), ifs::ConfigError);
    }
}

TEST_CASE("ODE oracle") {
    SUBCASE("matches the hand-solved resonant solution") {
        // Ca = (F_n/sqrt2) cos(beta t), Cc = -i F_n sin(beta t); all blocks
        // satisfy beta_n t <= 50 at this t
        auto p = make_params(WeightFamily::Factorial, 0.5);
        const double beta_top = ifs::rabi_beta(p, p.n_max());
        const double t = 50.0 / beta_top;
        const auto amps = ifs::integrate_ode(p, t, 10000);
        double dev = 0.0;
        for (int n = 1; n <= p.n_max(); ++n) {
            const double beta = ifs::rabi_beta(p, n);
            const Complex ca = p.field[n] / std::sqrt(2.0) * std::cos(beta * t);
            const Complex cc = -Complex(0, 1) * p.field[n] * std::sin(beta * t);
            dev = std::max(dev, std::abs(amps.ca[n] - ca));
            dev = std::max(dev, std::abs(amps.cb[n] - ca));
            dev = std::max(dev, std::abs(amps.cc[n] - cc));
        }
        CHECK(dev < 1e-8);
    }

    SUBCASE("k = 0 conserves the norm") {
        for (const auto family : {WeightFamily::Factorial, WeightFamily::QBracket}) {
            auto p = make_params(family, 0.5);
            const double norm0 = ifs::initial_state(p).total_norm();
            const auto amps = ifs::integrate_ode(p, 50.0, 10000);
            CHECK(std::abs(amps.total_norm() - norm0) < 1e-8);
        }
        // detuned evolution is still unitary
        auto p = make_params(WeightFamily::Factorial, 0.5);
        p.detuning = 0.8;
        const double norm0 = ifs::initial_state(p).total_norm();
        CHECK(std::abs(ifs::integrate_ode(p, 20.0, 8000).total_norm() - norm0) < 1e-8);
    }

    SUBCASE("time reversal with negated couplings") {
        auto p = make_params(WeightFamily::QBracket, 0.5);
        const auto start = ifs::initial_state(p);
        const auto fwd = ifs::integrate_ode(p, 10.0, 2000);
        auto back = p;
        back.g1 = -p.g1;
        back.g2 = -p.g2;
        AmplitudeSet shifted = fwd;
        shifted.t = 0.0; // couplings are time-independent at Delta' = 0
        const auto returned = ifs::integrate_ode_from(back, shifted, 10.0, 2000);
        CHECK(max_block_dev(returned, start) < 1e-6);
    }

    SUBCASE("fourth-order self-convergence") {
        auto p = make_params(WeightFamily::Factorial, 0.5, 12);
        const double t = 10.0;
        const auto ref = ifs::integrate_ode(p, t, 6400);
        const double e1 = max_block_dev(ifs::integrate_ode(p, t, 400), ref);
        const double e2 = max_block_dev(ifs::integrate_ode(p, t, 800), ref);
        CHECK(e1 / e2 > 12.0);
        CHECK(e1 / e2 < 20.0);
    }

    SUBCASE("decoupled decay is exactly exponential") {
        auto p = make_params(WeightFamily::Factorial, 0.5, 12);
        p.g1 = p.g2 = 0.0;
        p.k = 0.4;
        const double t = 3.0;
        const auto amps = ifs::integrate_ode(p, t, 600);
        const auto start = ifs::initial_state(p);
        for (int n = 1; n <= p.n_max(); ++n) {
            const double decay_ab = std::exp(-0.5 * p.k * p.seq.ratio(n - 1) * t);
            CHECK(std::abs(amps.ca[n] - start.ca[n] * decay_ab) < 1e-12);
            CHECK(std::abs(amps.cb[n] - start.cb[n] * decay_ab) < 1e-12);
            CHECK(std::abs(amps.cc[n]) == 0.0);
        }
    }

    SUBCASE("boson-limit two-level Rabi oscillation") {
        auto p = make_params(WeightFamily::Factorial, 0.5);
        p.g2 = 0.0;
        p.alpha_atom = 0.0; // atom starts in |a>
        const double t = 3.7;
        const auto amps = ifs::integrate_ode(p, t, 10000);
        double dev = 0.0;
        for (int n = 1; n <= p.n_max(); ++n) {
            const double expect = std::norm(p.field[n]) * std::pow(std::sin(std::sqrt(n) * t), 2);
            dev = std::max(dev, std::abs(std::norm(amps.cc[n]) - expect));
            CHECK(std::abs(amps.cb[n]) == 0.0);
        }
        CHECK(dev < 1e-8);
    }
}

TEST_CASE("evolve dispatch") {
    auto p = make_params(WeightFamily::Factorial, 0.5);

    SUBCASE("initial state at t = 0") {
        const auto amps = ifs::evolve(EvolveMode::PaperClosedForm, p, 0.0);
        const auto start = ifs::initial_state(p);
        CHECK(max_block_dev(amps, start) < 1e-15);
        CHECK(amps.mode == EvolveMode::PaperClosedForm);
    }

    SUBCASE("mode tags") {
        CHECK(ifs::evolve(EvolveMode::OracleODE, p, 0.5).mode == EvolveMode::OracleODE);
        auto pk = p;
        pk.k = 0.1;
        CHECK(ifs::evolve(EvolveMode::PaperLossy, pk, 0.5).mode == EvolveMode::PaperLossy);
    }

    SUBCASE("incompatible mode/params") {
        CHECK_THROWS_AS(ifs::evolve(EvolveMode::PaperLossy, p, 1.0), ifs::ConfigError);
        auto pk = p;
        pk.k = 0.1;
        CHECK_THROWS_AS(ifs::evolve(EvolveMode::PaperClosedForm, pk, 1.0), ifs::ConfigError);
    }

    SUBCASE("closed form vs oracle diverge at beta t = pi") {
        // paper block norms swell to 9|F_n|^2 while the oracle stays unitary
        const double t = kPi / ifs::rabi_beta(p, 1);
        const auto paper = ifs::evolve(EvolveMode::PaperClosedForm, p, t);
        const auto oracle = ifs::evolve(EvolveMode::OracleODE, p, t);
        CHECK(paper.block_norm(1) / std::norm(p.field[1]) == doctest::Approx(9.0).epsilon(1e-10));
        CHECK(std::abs(oracle.block_norm(1) - paper.block_norm(1)) > 1.0 * std::norm(p.field[1]));
    }

    SUBCASE("lossy sweep stays finite") {
        auto pk = p;
        pk.k = 0.1;
        for (double t = 0.0; t <= 50.0; t += 2.5) {
            const auto amps = ifs::evolve(EvolveMode::PaperLossy, pk, t);
            CHECK(std::isfinite(amps.total_norm()));
        }
    }

    SUBCASE("general parameters route through the general closed form") {
        auto pg = p;
        pg.detuning = 0.3;
        const auto amps = ifs::evolve(EvolveMode::PaperClosedForm, pg, 1.0);
        const auto direct = ifs::amplitudes_general(pg, 1.0);
        CHECK(max_block_dev(amps, direct) == 0.0);
    }
}
