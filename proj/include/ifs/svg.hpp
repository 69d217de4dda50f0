#ifndef IFS_SVG_HPP
#define IFS_SVG_HPP

#include <span>
#include <string>

#include "ifs/sweep.hpp"

namespace ifs {

struct SvgOptions {
    int width = 720;
    int height = 480;
    std::string title; // derived from the first series when empty
};

/// Single-panel deterministic SVG line plot: x = gt, y = witness value,
/// labeled axes, zero line, one polyline per series, legend when there is
/// more than one series. No timestamps or other run-dependent content.
/// Throws ConfigError when the series set is empty.
std::string emit_svg(std::span<const WitnessSeries> series, const SvgOptions& options = {});
std::string emit_svg(const WitnessSeries& series, const SvgOptions& options = {});

} // namespace ifs

#endif
