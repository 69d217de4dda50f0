#include "ifs/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "ifs/errors.hpp"

namespace ifs {

std::string witness_token(WitnessKind w) {
    return w == WitnessKind::Mandel ? "mandel" : "squeezing";
}

std::string sweep_mode_token(SweepMode m) {
    return m == SweepMode::Paper ? "paper" : "oracle";
}

WeightSequence SweepConfig::make_sequence() const {
    if (family == WeightFamily::Custom) {
        if (!custom_weights.empty())
            return WeightSequence::custom(custom_weights, n_max);
        if (!custom_path.empty())
            return WeightSequence::from_file(custom_path, n_max);
        throw ConfigError("custom weight family needs a table or a file path");
    }
    return WeightSequence::make(family, n_max, q);
}

std::string SweepConfig::family_label() const { return family_token(family); }

void SweepConfig::validate() const {
    const bool single = points == 1 && gt_min == gt_max;
    if (!single && !(points >= 2 && gt_min < gt_max))
        throw ConfigError("sweep grid needs points >= 2 with gt_min < gt_max "
                          "(or a single point with gt_min = gt_max)");
    if (gt_min < 0.0)
        throw ConfigError("gt_min must be >= 0 (evolution starts at gt = 0)");
    if (witnesses.empty())
        throw ConfigError("at least one witness must be requested");
    if (modes.empty())
        throw ConfigError("at least one mode must be requested");
    if (nbar < 0.0)
        throw ConfigError("nbar must be >= 0");
    if (k < 0.0)
        throw ConfigError("k must be >= 0");
    if (n_max < 1)
        throw ConfigError("n_max must be >= 1");
    if (steps_per_unit < 1)
        throw ConfigError("steps-per-unit must be >= 1");
}

double grid_point(const SweepConfig& config, int i) {
    if (config.points == 1)
        return config.gt_min;
    if (i == config.points - 1)
        return config.gt_max;
    const double step = (config.gt_max - config.gt_min) / (config.points - 1);
    return config.gt_min + i * step;
}

std::optional<double> WitnessSeries::value_at(int i) const {
    const WitnessSample& s = rows[static_cast<std::size_t>(i)];
    if (witness == WitnessKind::Mandel)
        return s.q;
    return s.s_opt;
}

namespace {

ModelParams make_params(const SweepConfig& config, const WeightSequence& seq) {
    ModelParams p;
    p.g1 = 1.0; // sweeps run over scaled time gt
    p.g2 = 1.0;
    p.k = config.k;
    p.seq = seq;
    p.field = initial_amplitudes({config.nbar, config.zeta, config.field_style}, seq,
                                 config.n_max);
    return p;
}

// Mode selects the amplitude route only; both routes are scored with the
// paper-mode moment formulas so deviations isolate the dynamics.
WitnessSample sample_from(const AmplitudeSet& amps, const WeightSequence& seq, double gt,
                          SweepMode mode) {
    const MomentSet m = moments_paper(amps, seq);
    WitnessSample s;
    s.gt = gt;
    s.q = mandel_q(m);
    s.s_opt = squeezing_opt(m);
    s.n_mean = m.m1;
    s.block_norm = amps.total_norm();
    s.mode = mode;
    return s;
}

// One pass over the grid for a single mode; both witnesses are computed per
// sample, the series projection happens afterwards.
std::vector<WitnessSample> sweep_mode(const SweepConfig& config, const WeightSequence& seq,
                                      const ModelParams& params, SweepMode mode) {
    std::vector<WitnessSample> rows;
    rows.reserve(static_cast<std::size_t>(config.points));
    const EvolveMode paper_mode =
        config.k == 0.0 ? EvolveMode::PaperClosedForm : EvolveMode::PaperLossy;
    AmplitudeSet state = initial_state(params);
    state.mode = EvolveMode::OracleODE;
    for (int i = 0; i < config.points; ++i) {
        const double gt = grid_point(config, i);
        try {
            if (mode == SweepMode::Paper) {
                const AmplitudeSet amps = evolve(paper_mode, params, gt);
                rows.push_back(sample_from(amps, seq, gt, mode));
            } else if (config.oracle_independent) {
                const AmplitudeSet amps =
                    evolve(EvolveMode::OracleODE, params, gt, config.steps_per_unit);
                rows.push_back(sample_from(amps, seq, gt, mode));
            } else {
                if (gt > state.t) {
                    const int steps = std::max(
                        1, static_cast<int>(std::lround((gt - state.t) * config.steps_per_unit)));
                    state = integrate_ode_from(params, state, gt, steps);
                }
                rows.push_back(sample_from(state, seq, gt, mode));
            }
        } catch (const NumericDomainError& e) {
            throw NumericDomainError(std::string(e.what()) + " (at gt = " + std::to_string(gt) +
                                     ")");
        }
    }
    return rows;
}

SeriesSummary summarize(const WitnessSeries& series) {
    SeriesSummary s;
    int below = 0;
    for (int i = 0; i < static_cast<int>(series.rows.size()); ++i) {
        const auto v = series.value_at(i);
        if (!v)
            continue;
        if (!s.min_value || *v < *s.min_value) {
            s.min_value = *v;
            s.argmin_gt = series.rows[static_cast<std::size_t>(i)].gt;
        }
        if (*v < 0.0)
            ++below;
    }
    s.fraction_below_zero = static_cast<double>(below) / static_cast<double>(series.rows.size());
    return s;
}

} // namespace

std::vector<WitnessSeries> run_sweep(const SweepConfig& config) {
    config.validate();
    const WeightSequence seq = config.make_sequence();
    const ModelParams params = make_params(config, seq);

    std::vector<WitnessSeries> out;
    for (const SweepMode mode : config.modes) {
        const std::vector<WitnessSample> rows = sweep_mode(config, seq, params, mode);
        for (const WitnessKind witness : config.witnesses) {
            WitnessSeries series;
            series.config = config;
            series.witness = witness;
            series.mode = mode;
            series.rows = rows;
            series.summary = summarize(series);
            out.push_back(std::move(series));
        }
    }
    return out;
}

DeviationReport compare_modes(const SweepConfig& base) {
    SweepConfig config = base;
    config.modes = {SweepMode::Paper, SweepMode::Oracle};
    config.witnesses = {WitnessKind::Mandel, WitnessKind::Squeezing};
    config.validate();
    const WeightSequence seq = config.make_sequence();
    const ModelParams params = make_params(config, seq);

    const std::vector<WitnessSample> paper = sweep_mode(config, seq, params, SweepMode::Paper);
    const std::vector<WitnessSample> oracle = sweep_mode(config, seq, params, SweepMode::Oracle);

    DeviationReport rep;
    rep.config = config;
    const double oracle_norm0 = oracle.empty() ? 0.0 : oracle.front().block_norm;
    for (std::size_t i = 0; i < paper.size(); ++i) {
        DeviationRow row;
        row.gt = paper[i].gt;
        row.q_paper = paper[i].q;
        row.q_oracle = oracle[i].q;
        if (row.q_paper && row.q_oracle)
            row.q_dev = std::abs(*row.q_paper - *row.q_oracle);
        row.s_paper = paper[i].s_opt;
        row.s_oracle = oracle[i].s_opt;
        row.s_dev = std::abs(row.s_paper - row.s_oracle);
        row.paper_norm_drift = paper[i].block_norm - 1.0;
        row.oracle_norm_drift = oracle[i].block_norm - oracle_norm0;
        if (row.q_dev && *row.q_dev > rep.max_q_dev) {
            rep.max_q_dev = *row.q_dev;
            rep.max_q_dev_gt = row.gt;
        }
        if (row.s_dev > rep.max_s_dev) {
            rep.max_s_dev = row.s_dev;
            rep.max_s_dev_gt = row.gt;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

const std::vector<std::string>& figure_preset_names() {
    static const std::vector<std::string> names = {
        "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c",
        "fig4a", "fig4b", "fig4c", "fig5a", "fig5b", "fig5c",
    };
    return names;
}

SweepConfig figure_preset(std::string_view name) {
    if (name.size() != 5 || !name.starts_with("fig"))
        throw ConfigError("unknown figure preset: " + std::string(name));
    const char fig = name[3];
    const char panel = name[4];
    SweepConfig c;
    c.modes = {SweepMode::Paper};
    switch (fig) {
    case '2': c.nbar = 0.5; c.k = 0.0; c.witnesses = {WitnessKind::Mandel}; break;
    case '3': c.nbar = 0.5; c.k = 0.1; c.witnesses = {WitnessKind::Mandel}; break;
    case '4': c.nbar = 0.3; c.k = 0.0; c.witnesses = {WitnessKind::Squeezing}; break;
    case '5': c.nbar = 0.3; c.k = 0.5; c.witnesses = {WitnessKind::Squeezing}; break;
    default: throw ConfigError("unknown figure preset: " + std::string(name));
    }
    switch (panel) {
    case 'a': c.family = WeightFamily::Factorial; break;
    case 'b': c.family = WeightFamily::FactorialSquared; break;
    case 'c': c.family = WeightFamily::QBracket; c.q = 0.5; break;
    default: throw ConfigError("unknown figure preset: " + std::string(name));
    }
    return c;
}

} // namespace ifs
