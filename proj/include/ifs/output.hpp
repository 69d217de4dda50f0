#ifndef IFS_OUTPUT_HPP
#define IFS_OUTPUT_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifs/sweep.hpp"

namespace ifs {

/// value with 12 significant digits (CSV contract).
std::string format_sig(double v, int digits = 12);

/// Witness CSV. Fixed header gt,witness,value,mode,lambda_family,nbar,k,q;
/// one row per sample, series concatenated in order, LF newlines, UTF-8.
/// Undefined witness values emit an empty value field; q is empty for
/// non-q families.
std::string emit_csv(std::span<const WitnessSeries> series);
std::string emit_csv(const WitnessSeries& series);

struct CsvRow {
    double gt = 0.0;
    std::string witness;
    std::optional<double> value;
    std::string mode;
    std::string family;
    double nbar = 0.0;
    double k = 0.0;
    std::optional<double> q;
};

/// Parses text produced by emit_csv (used by tests and downstream tooling).
std::vector<CsvRow> parse_witness_csv(const std::string& text);

/// Deviation-report CSV: gt,q_paper,q_oracle,q_dev,s_paper,s_oracle,s_dev,
/// paper_norm_drift,oracle_norm_drift.
std::string emit_compare_csv(const DeviationReport& report);

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;

    nlohmann::json to_json() const;
};

nlohmann::json config_json(const SweepConfig& config);

/// JSON document mirroring the CSV columns as an array of row objects plus
/// a manifest object.
std::string emit_json(std::span<const WitnessSeries> series, const RunManifest& manifest);

/// Whole-file atomic write (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace ifs

#endif
