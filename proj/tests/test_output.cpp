#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "ifs/errors.hpp"
#include "ifs/output.hpp"
#include "ifs/svg.hpp"
#include "ifs/sweep.hpp"

using ifs::SweepConfig;
using ifs::SweepMode;
using ifs::WeightFamily;
using ifs::WitnessKind;
using ifs::WitnessSeries;

namespace {

WitnessSeries tiny_series(int points = 3) {
    SweepConfig c;
    c.family = WeightFamily::QBracket;
    c.q = 0.5;
    c.nbar = 0.5;
    c.gt_max = 2.0;
    c.points = points;
    c.n_max = 30;
    return ifs::run_sweep(c)[0];
}

} // namespace

TEST_CASE("csv header and shape") {
    const WitnessSeries s = tiny_series();
    const std::string csv = ifs::emit_csv(s);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header == "gt,witness,value,mode,lambda_family,nbar,k,q");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 rows
    CHECK(csv.find("\r") == std::string::npos);           // LF only

    // rows ascend in gt and carry the config echo
    const auto rows = ifs::parse_witness_csv(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].gt == 0.0);
    CHECK(rows[1].gt == 1.0);
    CHECK(rows[2].gt == 2.0);
    for (const auto& r : rows) {
        CHECK(r.witness == "mandel");
        CHECK(r.mode == "paper");
        CHECK(r.family == "qbracket");
        CHECK(r.nbar == 0.5);
        CHECK(r.k == 0.0);
        REQUIRE(r.q.has_value());
        CHECK(*r.q == 0.5);
    }
}

TEST_CASE("empty series emits only the header") {
    WitnessSeries s = tiny_series();
    s.rows.clear();
    CHECK(ifs::emit_csv(s) == "gt,witness,value,mode,lambda_family,nbar,k,q\n");
}

TEST_CASE("csv round-trip preserves 12 significant digits") {
    SweepConfig c;
    c.family = WeightFamily::Factorial;
    c.nbar = 0.5;
    c.gt_max = 50.0;
    c.points = 101;
    c.witnesses = {WitnessKind::Mandel, WitnessKind::Squeezing};
    c.modes = {SweepMode::Paper, SweepMode::Oracle};
    const auto series = ifs::run_sweep(c);
    const auto rows = ifs::parse_witness_csv(ifs::emit_csv(series));
    REQUIRE(rows.size() == 4u * 101u);
    std::size_t i = 0;
    for (const WitnessSeries& s : series) {
        for (int j = 0; j < static_cast<int>(s.rows.size()); ++j, ++i) {
            const auto v = s.value_at(j);
            REQUIRE(rows[i].value.has_value() == v.has_value());
            if (v) {
                const double scale = std::max(1.0, std::abs(*v));
                CHECK(std::abs(*rows[i].value - *v) <= 1e-11 * scale);
            }
            CHECK(rows[i].witness == witness_token(s.witness));
            CHECK(rows[i].mode == sweep_mode_token(s.mode));
        }
    }
}

TEST_CASE("undefined witness values stay empty, not zero") {
    // an initial vacuum never develops photons in paper mode
    SweepConfig c;
    c.family = WeightFamily::Factorial;
    c.nbar = 0.0;
    c.gt_max = 1.0;
    c.points = 3;
    c.n_max = 20;
    const auto series = ifs::run_sweep(c);
    REQUIRE(series[0].rows.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK_FALSE(series[0].value_at(i).has_value());
    CHECK_FALSE(series[0].summary.min_value.has_value());

    const std::string csv = ifs::emit_csv(series);
    CHECK(csv.find(",mandel,,paper,") != std::string::npos);
    const auto rows = ifs::parse_witness_csv(csv);
    for (const auto& r : rows)
        CHECK_FALSE(r.value.has_value());

    // q column is empty for non-q families
    CHECK(csv.find(",factorial,0,0,\n") != std::string::npos);
}

TEST_CASE("format_sig emits 12 significant digits") {
    CHECK(ifs::format_sig(0.2402115896489615) == "0.240211589649");
    CHECK(ifs::format_sig(-0.9616192501518893) == "-0.961619250152");
    CHECK(ifs::format_sig(50.0) == "50");
    CHECK(ifs::format_sig(1234.5678, 6) == "1234.57");
}

TEST_CASE("json output mirrors the csv columns plus a manifest") {
    const WitnessSeries s = tiny_series();
    ifs::RunManifest manifest;
    manifest.command = "mandel";
    manifest.config = ifs::config_json(s.config);
    const std::string text = ifs::emit_json(std::span<const WitnessSeries>(&s, 1), manifest);
    const auto doc = nlohmann::json::parse(text);
    REQUIRE(doc.contains("manifest"));
    REQUIRE(doc.contains("rows"));
    CHECK(doc["manifest"]["tool"] == "ifsim");
    CHECK(doc["manifest"]["command"] == "mandel");
    CHECK(doc["manifest"]["config"]["lambda_family"] == "qbracket");
    CHECK(doc["manifest"]["config"]["points"] == 3);
    REQUIRE(doc["rows"].size() == 3);
    for (const auto& row : doc["rows"]) {
        CHECK(row.contains("gt"));
        CHECK(row["witness"] == "mandel");
        CHECK(row["mode"] == "paper");
        CHECK(row["lambda_family"] == "qbracket");
        CHECK(row["q"] == 0.5);
    }
}

TEST_CASE("undefined values serialize as json null") {
    SweepConfig c;
    c.family = WeightFamily::Factorial;
    c.nbar = 0.0; // vacuum: Q undefined everywhere
    c.gt_max = 1.0;
    c.points = 2;
    c.n_max = 20;
    const auto series = ifs::run_sweep(c);
    ifs::RunManifest manifest;
    manifest.command = "mandel";
    manifest.config = ifs::config_json(c);
    const auto doc = nlohmann::json::parse(ifs::emit_json(series, manifest));
    for (const auto& row : doc["rows"]) {
        CHECK(row["value"].is_null());
        CHECK(row["q"].is_null()); // non-q family
    }
}

TEST_CASE("compare csv") {
    SweepConfig c;
    c.family = WeightFamily::Factorial;
    c.nbar = 0.5;
    c.gt_max = 2.0;
    c.points = 5;
    c.n_max = 30;
    const auto rep = ifs::compare_modes(c);
    const std::string csv = ifs::emit_compare_csv(rep);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "gt,q_paper,q_oracle,q_dev,s_paper,s_oracle,s_dev,paper_norm_drift,oracle_norm_drift");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("svg output") {
    const WitnessSeries s = tiny_series(41);

    SUBCASE("deterministic, labeled, with a zero line") {
        const std::string svg = ifs::emit_svg(s);
        CHECK(svg == ifs::emit_svg(s));
        CHECK(svg.find("<svg xmlns") != std::string::npos);
        CHECK(svg.find(">gt</text>") != std::string::npos);
        CHECK(svg.find("Mandel Q") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") != std::string::npos); // zero line
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    }

    SUBCASE("constant-zero series draws its polyline on the zero line") {
        WitnessSeries zero = s;
        for (auto& row : zero.rows)
            row.q = 0.0;
        zero.witness = WitnessKind::Mandel;
        const std::string svg = ifs::emit_svg(zero);
        // the zero grid line and the data polyline share the same y
        const auto dash_pos = svg.find("stroke-dasharray");
        REQUIRE(dash_pos != std::string::npos);
        const auto line_start = svg.rfind("<line", dash_pos);
        const auto y1 = svg.find("y1='", line_start);
        const std::string zero_y = svg.substr(y1 + 4, svg.find('\'', y1 + 4) - y1 - 4);
        const auto poly = svg.find("<polyline");
        const auto pts = svg.find("points='", poly);
        const std::string first_pair = svg.substr(pts + 8, svg.find(' ', pts + 8) - pts - 8);
        const std::string poly_y = first_pair.substr(first_pair.find(',') + 1);
        CHECK(poly_y == zero_y);
    }

    SUBCASE("two modes draw two polylines and a legend") {
        SweepConfig c = s.config;
        c.modes = {SweepMode::Paper, SweepMode::Oracle};
        const auto both = ifs::run_sweep(c);
        const std::string svg = ifs::emit_svg(both);
        std::size_t count = 0;
        for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
             pos = svg.find("<polyline", pos + 1))
            ++count;
        CHECK(count == 2);
        CHECK(svg.find(">paper</text>") != std::string::npos);
        CHECK(svg.find(">oracle</text>") != std::string::npos);
    }

    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(ifs::emit_svg(std::span<const WitnessSeries>()), ifs::ConfigError);
        WitnessSeries hollow = s;
        hollow.rows.clear();
        CHECK_THROWS_AS(ifs::emit_svg(hollow), ifs::ConfigError);
    }
}
