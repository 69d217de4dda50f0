// ifsim: interacting-Fock-space atom-cavity simulator CLI.
//
// Subcommands: lambda (weight table), evolve (amplitudes at one time),
// mandel / squeeze (witness sweeps), figures (all twelve panel presets),
// compare (paper vs oracle deviation report).

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifs/errors.hpp"
#include "ifs/evolution.hpp"
#include "ifs/output.hpp"
#include "ifs/svg.hpp"
#include "ifs/sweep.hpp"
#include "ifs/version.hpp"
#include "ifs/witnesses.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string lambda = "factorial";
    double q = 0.5;
    double nbar = 0.5;
    double zeta = 0.0;
    double g = 1.0;
    double k = 0.0;
    double gt_min = 0.0;
    double gt_max = 50.0;
    int points = 1001;
    int nmax = 40;
    std::string mode = "paper";
    std::string format = "csv";
    std::string out;
    std::string plot;
    std::string config_path;
    int steps_per_unit = ifs::kDefaultStepsPerUnit;
    bool independent = false;
    std::string field_style = "paper";

    std::map<std::string, CLI::Option*> opts;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool sweep_grid) {
    f.opts["lambda"] = cmd->add_option(
        "--lambda", f.lambda,
        "weight family: factorial|factorial2|qbracket|qbracket-factorial|file:PATH");
    f.opts["q"] = cmd->add_option("--q", f.q, "deformation parameter for the q-families (0,1)");
    f.opts["nbar"] = cmd->add_option("--nbar", f.nbar, "initial coherent-field mean photon number");
    f.opts["zeta"] = cmd->add_option("--zeta", f.zeta, "initial coherent-field phase");
    f.opts["g"] = cmd->add_option("--g", f.g, "coupling constant (sweeps run over gt)");
    f.opts["k"] = cmd->add_option("--k", f.k, "cavity decay rate");
    f.opts["nmax"] = cmd->add_option("--nmax", f.nmax, "basis truncation N_max");
    f.opts["field-style"] = cmd->add_option("--field-style", f.field_style,
                                            "initial field amplitudes: paper|ifs")
                                ->check(CLI::IsMember({"paper", "ifs"}));
    if (sweep_grid) {
        f.opts["gt-min"] = cmd->add_option("--gt-min", f.gt_min, "sweep start (scaled time)");
        f.opts["gt-max"] = cmd->add_option("--gt-max", f.gt_max, "sweep end (scaled time)");
        f.opts["points"] = cmd->add_option("--points", f.points, "grid points");
        f.opts["mode"] = cmd->add_option("--mode", f.mode, "paper|oracle|both")
                             ->check(CLI::IsMember({"paper", "oracle", "both"}));
        f.opts["steps-per-unit"] =
            cmd->add_option("--steps-per-unit", f.steps_per_unit, "oracle RK4 steps per unit gt");
        f.opts["independent-integration"] =
            cmd->add_flag("--independent-integration", f.independent,
                          "re-integrate each oracle grid point from t = 0");
    }
    f.opts["format"] = cmd->add_option("--format", f.format, "csv|json")
                           ->check(CLI::IsMember({"csv", "json"}));
    f.opts["out"] = cmd->add_option("--out", f.out, "output file (stdout when absent)");
    f.opts["plot"] = cmd->add_option("--plot", f.plot, "write an SVG line plot to this path");
    f.opts["config"] = cmd->add_option("--config", f.config_path,
                                       "JSON config file; explicit flags override its entries");
}

ifs::WeightFamily family_from_token(const std::string& token, std::string* path_out) {
    if (token == "factorial")
        return ifs::WeightFamily::Factorial;
    if (token == "factorial2")
        return ifs::WeightFamily::FactorialSquared;
    if (token == "qbracket")
        return ifs::WeightFamily::QBracket;
    if (token == "qbracket-factorial")
        return ifs::WeightFamily::QBracketFactorial;
    if (token.starts_with("file:")) {
        *path_out = token.substr(5);
        return ifs::WeightFamily::Custom;
    }
    throw ifs::ConfigError("unknown weight family: " + token);
}

std::vector<ifs::SweepMode> modes_from_token(const std::string& token) {
    if (token == "paper")
        return {ifs::SweepMode::Paper};
    if (token == "oracle")
        return {ifs::SweepMode::Oracle};
    if (token == "both")
        return {ifs::SweepMode::Paper, ifs::SweepMode::Oracle};
    throw ifs::ConfigError("unknown mode: " + token);
}

void apply_config_file(const std::string& path, ifs::SweepConfig& c, std::string* mode_token) {
    std::ifstream in(path);
    if (!in)
        throw ifs::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ifs::ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw ifs::ConfigError("config file must hold a JSON object");
    try {
        if (j.contains("lambda_family")) {
            std::string p;
            c.family = family_from_token(j["lambda_family"].get<std::string>(), &p);
            if (!p.empty())
                c.custom_path = p;
        }
        if (j.contains("lambda_file")) {
            c.family = ifs::WeightFamily::Custom;
            c.custom_path = j["lambda_file"].get<std::string>();
        }
        if (j.contains("q")) c.q = j["q"].get<double>();
        if (j.contains("nbar")) c.nbar = j["nbar"].get<double>();
        if (j.contains("zeta")) c.zeta = j["zeta"].get<double>();
        if (j.contains("g")) c.g = j["g"].get<double>();
        if (j.contains("k")) c.k = j["k"].get<double>();
        if (j.contains("gt_min")) c.gt_min = j["gt_min"].get<double>();
        if (j.contains("gt_max")) c.gt_max = j["gt_max"].get<double>();
        if (j.contains("points")) c.points = j["points"].get<int>();
        if (j.contains("n_max")) c.n_max = j["n_max"].get<int>();
        if (j.contains("steps_per_unit")) c.steps_per_unit = j["steps_per_unit"].get<int>();
        if (j.contains("oracle_independent"))
            c.oracle_independent = j["oracle_independent"].get<bool>();
        if (j.contains("field_style"))
            c.field_style = j["field_style"].get<std::string>() == "ifs-coherent"
                                ? ifs::CoherentStyle::IFSCoherent
                                : ifs::CoherentStyle::PaperAmplitudes;
        if (j.contains("mode")) *mode_token = j["mode"].get<std::string>();
    } catch (const json::exception& e) {
        throw ifs::ConfigError("config file " + path + ": " + e.what());
    }
}

// config file first (if any), then every explicitly-passed flag on top
ifs::SweepConfig build_config(const CommonFlags& f, ifs::WitnessKind witness) {
    ifs::SweepConfig c;
    c.witnesses = {witness};
    std::string mode_token = "paper";
    if (!f.config_path.empty())
        apply_config_file(f.config_path, c, &mode_token);

    const auto given = [&](const char* name) {
        auto it = f.opts.find(name);
        return it != f.opts.end() && it->second != nullptr && it->second->count() > 0;
    };
    if (given("lambda")) {
        std::string p;
        c.family = family_from_token(f.lambda, &p);
        c.custom_path = p;
    }
    if (given("q")) c.q = f.q;
    if (given("nbar")) c.nbar = f.nbar;
    if (given("zeta")) c.zeta = f.zeta;
    if (given("g")) c.g = f.g;
    if (given("k")) c.k = f.k;
    if (given("gt-min")) c.gt_min = f.gt_min;
    if (given("gt-max")) c.gt_max = f.gt_max;
    if (given("points")) c.points = f.points;
    if (given("nmax")) c.n_max = f.nmax;
    if (given("steps-per-unit")) c.steps_per_unit = f.steps_per_unit;
    if (given("independent-integration")) c.oracle_independent = f.independent;
    if (given("field-style"))
        c.field_style = f.field_style == "ifs" ? ifs::CoherentStyle::IFSCoherent
                                               : ifs::CoherentStyle::PaperAmplitudes;
    if (given("mode")) mode_token = f.mode;
    c.modes = modes_from_token(mode_token);

    // single-point convenience: --gt-max T --points 1 pins the grid at T
    // unless the user moved gt_min themselves
    if (c.points == 1 && c.gt_min == 0.0 && c.gt_max != 0.0)
        c.gt_min = c.gt_max;
    return c;
}

class ManifestWriter {
public:
    ManifestWriter(std::string command, json config)
        : start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.config = std::move(config);
    }

    void record(const std::filesystem::path& path) { manifest_.outputs.push_back(path.string()); }

    // written next to the first recorded output (or to an explicit path)
    void finalize(const std::filesystem::path& explicit_path = {}) {
        if (manifest_.outputs.empty() && explicit_path.empty())
            return;
        manifest_.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::filesystem::path path = explicit_path;
        if (path.empty())
            path = manifest_.outputs.front() + ".manifest.json";
        manifest_.outputs.push_back(path.string());
        ifs::write_file_atomic(path, manifest_.to_json().dump(2) + "\n");
    }

    ifs::RunManifest& manifest() { return manifest_; }

private:
    ifs::RunManifest manifest_;
    std::chrono::steady_clock::time_point start_;
};

void emit_data(const std::vector<ifs::WitnessSeries>& series, const CommonFlags& f,
               ManifestWriter& mw) {
    std::string data;
    if (f.format == "json")
        data = ifs::emit_json(series, mw.manifest());
    else
        data = ifs::emit_csv(series);
    if (f.out.empty()) {
        std::cout << data;
    } else {
        ifs::write_file_atomic(f.out, data);
        mw.record(f.out);
    }
    if (!f.plot.empty()) {
        ifs::write_file_atomic(f.plot, ifs::emit_svg(series));
        mw.record(f.plot);
    }
    mw.finalize();
}

int run_lambda(const CommonFlags& f) {
    const ifs::WeightSequence seq = ifs::WeightSequence::from_token(f.lambda, f.nmax, f.q);
    std::string out = "n,lambda\n";
    for (int n = 0; n <= seq.n_max(); ++n)
        out += std::to_string(n) + "," + ifs::format_sig(seq.weight(n)) + "\n";
    if (f.out.empty()) {
        std::cout << out;
    } else {
        ifs::write_file_atomic(f.out, out);
        json cfg;
        cfg["lambda_family"] = seq.token();
        cfg["q"] = f.q;
        cfg["n_max"] = f.nmax;
        ManifestWriter mw("lambda", cfg);
        mw.record(f.out);
        mw.finalize();
    }
    return 0;
}

int run_evolve(const CommonFlags& f, double gt) {
    ifs::SweepConfig c = build_config(f, ifs::WitnessKind::Mandel);
    const ifs::WeightSequence seq = c.make_sequence();
    ifs::ModelParams p;
    p.k = c.k;
    p.seq = seq;
    p.field = ifs::initial_amplitudes({c.nbar, c.zeta, c.field_style}, seq, c.n_max);
    ifs::EvolveMode mode = ifs::EvolveMode::OracleODE;
    if (c.modes.front() == ifs::SweepMode::Paper)
        mode = c.k == 0.0 ? ifs::EvolveMode::PaperClosedForm : ifs::EvolveMode::PaperLossy;
    const ifs::AmplitudeSet amps = ifs::evolve(mode, p, gt, c.steps_per_unit);

    ManifestWriter mw("evolve", ifs::config_json(c));
    mw.manifest().config["gt"] = gt;
    std::string data;
    if (f.format == "json") {
        json rows = json::array();
        for (int n = 1; n <= amps.blocks(); ++n) {
            rows.push_back({{"n", n},
                            {"ca", {amps.ca[n].real(), amps.ca[n].imag()}},
                            {"cb", {amps.cb[n].real(), amps.cb[n].imag()}},
                            {"cc", {amps.cc[n].real(), amps.cc[n].imag()}},
                            {"block_norm", amps.block_norm(n)}});
        }
        json doc;
        doc["manifest"] = mw.manifest().to_json();
        doc["mode"] = ifs::mode_token(amps.mode);
        doc["amplitudes"] = rows;
        data = doc.dump(2) + "\n";
    } else {
        data = "n,re_ca,im_ca,re_cb,im_cb,re_cc,im_cc,block_norm\n";
        for (int n = 1; n <= amps.blocks(); ++n) {
            data += std::to_string(n);
            for (const double v : {amps.ca[n].real(), amps.ca[n].imag(), amps.cb[n].real(),
                                   amps.cb[n].imag(), amps.cc[n].real(), amps.cc[n].imag(),
                                   amps.block_norm(n)})
                data += "," + ifs::format_sig(v);
            data += "\n";
        }
    }
    if (f.out.empty()) {
        std::cout << data;
    } else {
        ifs::write_file_atomic(f.out, data);
        mw.record(f.out);
    }
    mw.finalize();
    return 0;
}

int run_sweep_command(const CommonFlags& f, ifs::WitnessKind witness) {
    const ifs::SweepConfig c = build_config(f, witness);
    ManifestWriter mw(ifs::witness_token(witness), ifs::config_json(c));
    const std::vector<ifs::WitnessSeries> series = ifs::run_sweep(c);
    emit_data(series, f, mw);
    return 0;
}

int run_figures(const std::string& out_dir, const std::string& format) {
    std::filesystem::create_directories(out_dir);
    json cfg;
    cfg["presets"] = ifs::figure_preset_names();
    ManifestWriter mw("figures", cfg);
    for (const std::string& name : ifs::figure_preset_names()) {
        const ifs::SweepConfig c = ifs::figure_preset(name);
        const std::vector<ifs::WitnessSeries> series = ifs::run_sweep(c);
        const std::filesystem::path data_path =
            std::filesystem::path(out_dir) / (name + (format == "json" ? ".json" : ".csv"));
        if (format == "json") {
            ifs::RunManifest sub;
            sub.command = "figures/" + name;
            sub.config = ifs::config_json(c);
            ifs::write_file_atomic(data_path, ifs::emit_json(series, sub));
        } else {
            ifs::write_file_atomic(data_path, ifs::emit_csv(series));
        }
        mw.record(data_path);
        const std::filesystem::path svg_path = std::filesystem::path(out_dir) / (name + ".svg");
        ifs::write_file_atomic(svg_path, ifs::emit_svg(series, {.title = name}));
        mw.record(svg_path);
        std::cerr << name << ": wrote " << data_path.string() << " and " << svg_path.string()
                  << "\n";
    }
    mw.finalize(std::filesystem::path(out_dir) / "manifest.json");
    return 0;
}

int run_compare(const CommonFlags& f) {
    const ifs::SweepConfig c = build_config(f, ifs::WitnessKind::Mandel);
    ManifestWriter mw("compare", ifs::config_json(c));
    const ifs::DeviationReport rep = ifs::compare_modes(c);
    std::string data;
    if (f.format == "json") {
        json doc;
        doc["manifest"] = mw.manifest().to_json();
        json rows = json::array();
        for (const ifs::DeviationRow& r : rep.rows) {
            json row;
            row["gt"] = r.gt;
            row["q_paper"] = r.q_paper ? json(*r.q_paper) : json(nullptr);
            row["q_oracle"] = r.q_oracle ? json(*r.q_oracle) : json(nullptr);
            row["q_dev"] = r.q_dev ? json(*r.q_dev) : json(nullptr);
            row["s_paper"] = r.s_paper;
            row["s_oracle"] = r.s_oracle;
            row["s_dev"] = r.s_dev;
            row["paper_norm_drift"] = r.paper_norm_drift;
            row["oracle_norm_drift"] = r.oracle_norm_drift;
            rows.push_back(std::move(row));
        }
        doc["rows"] = rows;
        doc["summary"] = {{"max_q_dev", rep.max_q_dev},
                          {"max_q_dev_gt", rep.max_q_dev_gt},
                          {"max_s_dev", rep.max_s_dev},
                          {"max_s_dev_gt", rep.max_s_dev_gt}};
        data = doc.dump(2) + "\n";
    } else {
        data = ifs::emit_compare_csv(rep);
    }
    if (f.out.empty()) {
        std::cout << data;
    } else {
        ifs::write_file_atomic(f.out, data);
        mw.record(f.out);
    }
    std::cerr << "max |Q_paper - Q_oracle| = " << ifs::format_sig(rep.max_q_dev, 6)
              << " at gt = " << ifs::format_sig(rep.max_q_dev_gt, 6) << "\n"
              << "max |S_paper - S_oracle| = " << ifs::format_sig(rep.max_s_dev, 6)
              << " at gt = " << ifs::format_sig(rep.max_s_dev_gt, 6) << "\n";
    mw.finalize();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interacting-Fock-space V-type atom-cavity simulator"};
    app.set_version_flag("--version", std::string(ifs::kToolName) + " " + ifs::kVersion);
    app.require_subcommand(1);

    CommonFlags lambda_flags;
    CLI::App* lambda_cmd = app.add_subcommand("lambda", "print a weight table");
    lambda_cmd->add_option("--lambda", lambda_flags.lambda, "weight family token");
    lambda_cmd->add_option("--q", lambda_flags.q, "deformation parameter");
    lambda_cmd->add_option("--nmax", lambda_flags.nmax, "largest tabulated index");
    lambda_cmd->add_option("--out", lambda_flags.out, "output file");

    CommonFlags evolve_flags;
    double evolve_gt = 0.0;
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "amplitudes at one scaled time");
    add_common_flags(evolve_cmd, evolve_flags, false);
    evolve_cmd->add_option("--gt", evolve_gt, "scaled time")->required();
    evolve_flags.opts["mode"] = evolve_cmd->add_option("--mode", evolve_flags.mode, "paper|oracle")
                                    ->check(CLI::IsMember({"paper", "oracle"}));
    evolve_flags.opts["steps-per-unit"] = evolve_cmd->add_option(
        "--steps-per-unit", evolve_flags.steps_per_unit, "oracle RK4 steps per unit gt");

    CommonFlags mandel_flags;
    CLI::App* mandel_cmd = app.add_subcommand("mandel", "Mandel Q sweep");
    add_common_flags(mandel_cmd, mandel_flags, true);

    CommonFlags squeeze_flags;
    CLI::App* squeeze_cmd = app.add_subcommand("squeeze", "optimal quadrature squeezing sweep");
    add_common_flags(squeeze_cmd, squeeze_flags, true);

    std::string out_dir = "figures";
    std::string fig_format = "csv";
    CLI::App* figures_cmd = app.add_subcommand("figures", "reproduce all twelve figure panels");
    figures_cmd->add_option("--out-dir", out_dir, "output directory");
    figures_cmd->add_option("--format", fig_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    CommonFlags compare_flags;
    CLI::App* compare_cmd = app.add_subcommand("compare", "paper vs oracle deviation report");
    add_common_flags(compare_cmd, compare_flags, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (lambda_cmd->parsed())
            return run_lambda(lambda_flags);
        if (evolve_cmd->parsed())
            return run_evolve(evolve_flags, evolve_gt);
        if (mandel_cmd->parsed())
            return run_sweep_command(mandel_flags, ifs::WitnessKind::Mandel);
        if (squeeze_cmd->parsed())
            return run_sweep_command(squeeze_flags, ifs::WitnessKind::Squeezing);
        if (figures_cmd->parsed())
            return run_figures(out_dir, fig_format);
        if (compare_cmd->parsed())
            return run_compare(compare_flags);
    } catch (const ifs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ifs::NumericDomainError& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
