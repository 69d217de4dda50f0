#include "ifs/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ifs/errors.hpp"
#include "ifs/version.hpp"

namespace ifs {

namespace {

constexpr const char* kCsvHeader = "gt,witness,value,mode,lambda_family,nbar,k,q";

bool is_q_family(WeightFamily f) {
    return f == WeightFamily::QBracket || f == WeightFamily::QBracketFactorial;
}

} // namespace

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string emit_csv(std::span<const WitnessSeries> series) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const WitnessSeries& s : series) {
        const std::string witness = witness_token(s.witness);
        const std::string mode = sweep_mode_token(s.mode);
        const std::string family = s.config.family_label();
        const std::string nbar = format_sig(s.config.nbar);
        const std::string k = format_sig(s.config.k);
        const std::string q = is_q_family(s.config.family) ? format_sig(s.config.q) : "";
        for (int i = 0; i < static_cast<int>(s.rows.size()); ++i) {
            const auto v = s.value_at(i);
            out += format_sig(s.rows[static_cast<std::size_t>(i)].gt);
            out += ',';
            out += witness;
            out += ',';
            if (v)
                out += format_sig(*v);
            out += ',';
            out += mode;
            out += ',';
            out += family;
            out += ',';
            out += nbar;
            out += ',';
            out += k;
            out += ',';
            out += q;
            out += '\n';
        }
    }
    return out;
}

std::string emit_csv(const WitnessSeries& series) {
    return emit_csv(std::span<const WitnessSeries>(&series, 1));
}

std::vector<CsvRow> parse_witness_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ConfigError("witness CSV: missing or unexpected header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        cells.resize(8);
        CsvRow r;
        r.gt = std::stod(cells[0]);
        r.witness = cells[1];
        if (!cells[2].empty())
            r.value = std::stod(cells[2]);
        r.mode = cells[3];
        r.family = cells[4];
        r.nbar = std::stod(cells[5]);
        r.k = std::stod(cells[6]);
        if (!cells[7].empty())
            r.q = std::stod(cells[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string emit_compare_csv(const DeviationReport& report) {
    std::string out =
        "gt,q_paper,q_oracle,q_dev,s_paper,s_oracle,s_dev,paper_norm_drift,oracle_norm_drift\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_sig(*v) : std::string(); };
    for (const DeviationRow& r : report.rows) {
        out += format_sig(r.gt);
        out += ',' + opt(r.q_paper);
        out += ',' + opt(r.q_oracle);
        out += ',' + opt(r.q_dev);
        out += ',' + format_sig(r.s_paper);
        out += ',' + format_sig(r.s_oracle);
        out += ',' + format_sig(r.s_dev);
        out += ',' + format_sig(r.paper_norm_drift);
        out += ',' + format_sig(r.oracle_norm_drift);
        out += '\n';
    }
    return out;
}

nlohmann::json config_json(const SweepConfig& c) {
    nlohmann::json j;
    j["lambda_family"] = c.family_label();
    if (is_q_family(c.family))
        j["q"] = c.q;
    if (c.family == WeightFamily::Custom && !c.custom_path.empty())
        j["lambda_file"] = c.custom_path;
    j["nbar"] = c.nbar;
    j["zeta"] = c.zeta;
    j["g"] = c.g;
    j["k"] = c.k;
    j["gt_min"] = c.gt_min;
    j["gt_max"] = c.gt_max;
    j["points"] = c.points;
    j["n_max"] = c.n_max;
    j["steps_per_unit"] = c.steps_per_unit;
    j["oracle_independent"] = c.oracle_independent;
    j["field_style"] =
        c.field_style == CoherentStyle::PaperAmplitudes ? "paper" : "ifs-coherent";
    nlohmann::json w = nlohmann::json::array();
    for (const auto witness : c.witnesses)
        w.push_back(witness_token(witness));
    j["witnesses"] = w;
    nlohmann::json m = nlohmann::json::array();
    for (const auto mode : c.modes)
        m.push_back(sweep_mode_token(mode));
    j["modes"] = m;
    return j;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["conventions"] = {
        {"index_rule", "a lambda-ratio term contributes iff every index is >= 0"},
        {"time_axis", "scaled time gt with g = 1 internally"},
        {"paper_mode", "closed forms evaluated verbatim; they do not solve the "
                       "equations of motion and their state norm drifts"},
        {"lossy_mode", "lossy closed form taken verbatim; its k->0 limit does not recover "
                       "the lossless form"},
        {"oracle_mode", "fixed-step RK4 on the equations of motion with the A+A decay term; "
                        "scored with the same moment formulas as paper mode"},
    };
    j["outputs"] = outputs;
    j["duration_seconds"] = duration_seconds;
    return j;
}

std::string emit_json(std::span<const WitnessSeries> series, const RunManifest& manifest) {
    nlohmann::json rows = nlohmann::json::array();
    for (const WitnessSeries& s : series) {
        const bool qfam = is_q_family(s.config.family);
        for (int i = 0; i < static_cast<int>(s.rows.size()); ++i) {
            const auto v = s.value_at(i);
            nlohmann::json r;
            r["gt"] = s.rows[static_cast<std::size_t>(i)].gt;
            r["witness"] = witness_token(s.witness);
            r["value"] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
            r["mode"] = sweep_mode_token(s.mode);
            r["lambda_family"] = s.config.family_label();
            r["nbar"] = s.config.nbar;
            r["k"] = s.config.k;
            r["q"] = qfam ? nlohmann::json(s.config.q) : nlohmann::json(nullptr);
            rows.push_back(std::move(r));
        }
    }
    nlohmann::json doc;
    doc["manifest"] = manifest.to_json();
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace ifs
