#include "ifs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ifs/errors.hpp"
#include "ifs/output.hpp"

namespace ifs {

namespace {

const char* kPalette[] = {"#1f6fb4", "#c23b22", "#2e8540", "#8031a7"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    // suppress negative zero so equal runs emit identical text
    if (v == 0.0)
        v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string witness_label(WitnessKind w) {
    return w == WitnessKind::Mandel ? "Mandel Q" : "S_opt";
}

} // namespace

std::string emit_svg(std::span<const WitnessSeries> series, const SvgOptions& options) {
    if (series.empty())
        throw ConfigError("emit_svg: no series to plot");
    for (const WitnessSeries& s : series)
        if (s.rows.empty())
            throw ConfigError("emit_svg: empty series");

    double x_min = series.front().rows.front().gt;
    double x_max = x_min;
    double y_min = 0.0, y_max = 0.0; // zero line always in range
    bool any_value = false;
    for (const WitnessSeries& s : series) {
        for (int i = 0; i < static_cast<int>(s.rows.size()); ++i) {
            x_min = std::min(x_min, s.rows[static_cast<std::size_t>(i)].gt);
            x_max = std::max(x_max, s.rows[static_cast<std::size_t>(i)].gt);
            if (const auto v = s.value_at(i)) {
                y_min = any_value ? std::min(y_min, *v) : std::min(0.0, *v);
                y_max = any_value ? std::max(y_max, *v) : std::max(0.0, *v);
                any_value = true;
            }
        }
    }
    if (!any_value)
        throw ConfigError("emit_svg: series has no defined values");
    if (x_max == x_min)
        x_max = x_min + 1.0;
    const double y_pad = (y_max - y_min) > 0.0 ? 0.05 * (y_max - y_min) : 0.5;
    y_min -= y_pad;
    y_max += y_pad;

    const double w = options.width;
    const double h = options.height;
    const double left = 72, right = 24, top = 40, bottom = 48;
    const double plot_w = w - left - right;
    const double plot_h = h - top - bottom;
    const auto map_x = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto map_y = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << options.width
        << "' height='" << options.height << "' viewBox='0 0 " << options.width << ' '
        << options.height << "'>\n";
    svg << "<rect width='" << options.width << "' height='" << options.height
        << "' fill='white'/>\n";

    std::string title = options.title;
    if (title.empty()) {
        const WitnessSeries& s = series.front();
        title = witness_token(s.witness) + " - " + s.config.family_label() +
                ", nbar=" + format_sig(s.config.nbar, 6) + ", k=" + format_sig(s.config.k, 6);
    }
    svg << "<text x='" << px(w / 2) << "' y='22' font-family='monospace' font-size='14' "
           "text-anchor='middle'>" << title << "</text>\n";

    // frame
    svg << "<rect x='" << px(left) << "' y='" << px(top) << "' width='" << px(plot_w)
        << "' height='" << px(plot_h) << "' fill='none' stroke='black' stroke-width='1'/>\n";

    // ticks
    const int n_ticks = 6;
    for (int i = 0; i < n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / (n_ticks - 1);
        const double X = map_x(fx);
        svg << "<line x1='" << px(X) << "' y1='" << px(top + plot_h) << "' x2='" << px(X)
            << "' y2='" << px(top + plot_h + 5) << "' stroke='black'/>\n";
        svg << "<text x='" << px(X) << "' y='" << px(top + plot_h + 18)
            << "' font-family='monospace' font-size='11' text-anchor='middle'>" << tick_label(fx)
            << "</text>\n";
        const double fy = y_min + (y_max - y_min) * i / (n_ticks - 1);
        const double Y = map_y(fy);
        svg << "<line x1='" << px(left - 5) << "' y1='" << px(Y) << "' x2='" << px(left)
            << "' y2='" << px(Y) << "' stroke='black'/>\n";
        svg << "<text x='" << px(left - 8) << "' y='" << px(Y + 4)
            << "' font-family='monospace' font-size='11' text-anchor='end'>" << tick_label(fy)
            << "</text>\n";
    }

    // zero line
    const double y0 = map_y(0.0);
    svg << "<line x1='" << px(left) << "' y1='" << px(y0) << "' x2='" << px(left + plot_w)
        << "' y2='" << px(y0) << "' stroke='#888888' stroke-width='1' stroke-dasharray='4,3'/>\n";

    // axis labels
    svg << "<text x='" << px(left + plot_w / 2) << "' y='" << px(h - 10)
        << "' font-family='monospace' font-size='13' text-anchor='middle'>gt</text>\n";
    svg << "<text x='16' y='" << px(top + plot_h / 2)
        << "' font-family='monospace' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
        << px(top + plot_h / 2) << ")'>" << witness_label(series.front().witness) << "</text>\n";

    // one polyline per series, broken at undefined samples
    for (std::size_t si = 0; si < series.size(); ++si) {
        const WitnessSeries& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        const auto flush = [&]() {
            if (!points.empty()) {
                svg << "<polyline fill='none' stroke='" << color
                    << "' stroke-width='1.2' points='" << points << "'/>\n";
                points.clear();
            }
        };
        for (int i = 0; i < static_cast<int>(s.rows.size()); ++i) {
            const auto v = s.value_at(i);
            if (!v) {
                flush();
                continue;
            }
            points += px(map_x(s.rows[static_cast<std::size_t>(i)].gt));
            points += ',';
            points += px(map_y(*v));
            points += ' ';
        }
        flush();
    }

    // legend
    if (series.size() > 1) {
        for (std::size_t si = 0; si < series.size(); ++si) {
            const WitnessSeries& s = series[si];
            const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            const double ly = top + 14 + 16 * static_cast<double>(si);
            std::string label = sweep_mode_token(s.mode);
            if (s.witness != series.front().witness ||
                series.size() > 2) // disambiguate mixed-witness plots
                label = witness_token(s.witness) + "/" + label;
            svg << "<line x1='" << px(left + plot_w - 110) << "' y1='" << px(ly) << "' x2='"
                << px(left + plot_w - 86) << "' y2='" << px(ly) << "' stroke='" << color
                << "' stroke-width='1.2'/>\n";
            svg << "<text x='" << px(left + plot_w - 80) << "' y='" << px(ly + 4)
                << "' font-family='monospace' font-size='11'>" << label << "</text>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string emit_svg(const WitnessSeries& series, const SvgOptions& options) {
    return emit_svg(std::span<const WitnessSeries>(&series, 1), options);
}

} // namespace ifs
