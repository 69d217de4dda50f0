#ifndef IFS_SWEEP_HPP
#define IFS_SWEEP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifs/field.hpp"
#include "ifs/weights.hpp"
#include "ifs/witnesses.hpp"

namespace ifs {

enum class WitnessKind { Mandel, Squeezing };
enum class SweepMode { Paper, Oracle };

std::string witness_token(WitnessKind w);
std::string sweep_mode_token(SweepMode m);

struct SweepConfig {
    WeightFamily family = WeightFamily::Factorial;
    double q = 0.5;                       // q-families only
    std::vector<double> custom_weights;   // Custom family table (lambda_0..)
    std::string custom_path;              // provenance echo for Custom
    double nbar = 0.5;
    double zeta = 0.0;
    double g = 1.0;                       // retained; sweeps run over gt with g = 1
    double k = 0.0;
    double gt_min = 0.0;
    double gt_max = 50.0;
    int points = 1001;
    std::vector<WitnessKind> witnesses{WitnessKind::Mandel};
    std::vector<SweepMode> modes{SweepMode::Paper};
    int n_max = 40;
    int steps_per_unit = kDefaultStepsPerUnit;
    bool oracle_independent = false;      // re-integrate each grid point from t = 0
    CoherentStyle field_style = CoherentStyle::PaperAmplitudes;

    WeightSequence make_sequence() const;
    std::string family_label() const;
    void validate() const;
};

struct WitnessSample {
    double gt = 0.0;
    std::optional<double> q;  // empty when the mean photon number vanishes
    double s_opt = 0.0;
    double n_mean = 0.0;
    double block_norm = 0.0;
    SweepMode mode = SweepMode::Paper;
};

struct SeriesSummary {
    std::optional<double> min_value;
    double argmin_gt = 0.0;
    double fraction_below_zero = 0.0;
};

struct WitnessSeries {
    SweepConfig config;
    WitnessKind witness = WitnessKind::Mandel;
    SweepMode mode = SweepMode::Paper;
    std::vector<WitnessSample> rows;
    SeriesSummary summary;

    std::optional<double> value_at(int i) const;
};

/// One series per requested witness x mode, rows ordered by gt.
std::vector<WitnessSeries> run_sweep(const SweepConfig& config);

struct DeviationRow {
    double gt = 0.0;
    std::optional<double> q_paper, q_oracle, q_dev;
    double s_paper = 0.0, s_oracle = 0.0, s_dev = 0.0;
    double paper_norm_drift = 0.0;   // paper-mode state norm - 1
    double oracle_norm_drift = 0.0;  // oracle norm - its t = 0 value
};

struct DeviationReport {
    SweepConfig config;
    std::vector<DeviationRow> rows;
    double max_q_dev = 0.0;
    double max_q_dev_gt = 0.0;
    double max_s_dev = 0.0;
    double max_s_dev_gt = 0.0;
};

/// Paper vs oracle deviations over the grid (both modes forced on).
DeviationReport compare_modes(const SweepConfig& config);

/// fig2a..fig2c, fig3a..fig3c, fig4a..fig4c, fig5a..fig5c.
SweepConfig figure_preset(std::string_view name);
const std::vector<std::string>& figure_preset_names();

/// Grid point i of the sweep lattice (final point lands exactly on gt_max).
double grid_point(const SweepConfig& config, int i);

} // namespace ifs

#endif
