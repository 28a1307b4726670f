#pragma once

#include "gcfiber/diagram.hpp"

#include <optional>
#include <string>

namespace gcfiber {

struct DiagramStyle {
    std::optional<int> shade_m;           // shade B(m)
    std::optional<int> mark_hor;          // highlight P^hor_{i,i+1}
    std::optional<int> mark_ver;          // highlight P^ver_{j+1,j}
    bool segment_labels = true;           // I_m markers, m = 2..floor(n/2) (I for n = 3)
};

/// Deterministic SVG of the ladder diagram Gamma(n).
std::string render_svg(int n, const DiagramStyle& style);

/// Plain-text rendering of the same data.
std::string render_ascii(int n, const DiagramStyle& style);

} // namespace gcfiber
