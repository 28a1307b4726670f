#include "gcfiber/render.hpp"

#include <sstream>

namespace gcfiber {

namespace {

constexpr int kCell = 40;
constexpr int kMargin = 30;

// Boxes are drawn with column index i to the right and row index j upward.
int box_x(int i) { return kMargin + (i - 1) * kCell; }
int box_y(int n, int j) { return kMargin + (n - 1 - j) * kCell; }

} // namespace

std::string render_svg(int n, const DiagramStyle& style) {
    if (n < 3) throw std::invalid_argument("render_svg requires n >= 3");
    const int w = 2 * kMargin + (n - 1) * kCell;
    const int h = 2 * kMargin + (n - 1) * kCell;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << " " << h << "\">\n";
    svg << "  <title>Ladder diagram Gamma(" << n << ")</title>\n";

    if (style.shade_m) {
        const int m = *style.shade_m;
        svg << "  <g id=\"box-shade\" fill=\"#f4c7c3\" stroke=\"none\">\n";
        for (const auto& a : gamma(n)) {
            if (!in_box(m, a)) continue;
            svg << "    <rect x=\"" << box_x(a.i) << "\" y=\"" << box_y(n, a.j) << "\" width=\"" << kCell
                << "\" height=\"" << kCell << "\"/>\n";
        }
        svg << "  </g>\n";
    }

    svg << "  <g id=\"cells\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\">\n";
    for (const auto& a : gamma(n)) {
        svg << "    <rect x=\"" << box_x(a.i) << "\" y=\"" << box_y(n, a.j) << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\"/>\n";
    }
    svg << "  </g>\n";

    if (style.mark_hor) {
        const int i = *style.mark_hor;
        svg << "  <g id=\"schubert-hor-" << i << "\" stroke=\"#1a66cc\" stroke-width=\"4\">\n";
        for (int s = 1; s <= n - i; ++s) {
            // Facet u_{i,s} = u_{i+1,s}: the right edge of box (i, s).
            int x = box_x(i) + kCell;
            svg << "    <line x1=\"" << x << "\" y1=\"" << box_y(n, s) << "\" x2=\"" << x << "\" y2=\""
                << box_y(n, s) + kCell << "\"/>\n";
        }
        svg << "  </g>\n";
    }
    if (style.mark_ver) {
        const int j = *style.mark_ver;
        svg << "  <g id=\"schubert-ver-" << j << "\" stroke=\"#22883a\" stroke-width=\"4\">\n";
        for (int r = 1; r <= n - j; ++r) {
            // Facet u_{r,j+1} = u_{r,j}: the top edge of box (r, j).
            int y = box_y(n, j);
            svg << "    <line x1=\"" << box_x(r) << "\" y1=\"" << y << "\" x2=\"" << box_x(r) + kCell << "\" y2=\""
                << y << "\"/>\n";
        }
        svg << "  </g>\n";
    }

    if (style.segment_labels) {
        svg << "  <g id=\"segments\" font-family=\"monospace\" font-size=\"14\" fill=\"#b00000\">\n";
        if (n == 3) {
            svg << "    <circle cx=\"" << box_x(1) << "\" cy=\"" << box_y(3, 1) + kCell << "\" r=\"4\"/>\n";
            svg << "    <text id=\"segment-I\" x=\"" << box_x(1) + 6 << "\" y=\"" << box_y(3, 1) + kCell - 6
                << "\">I</text>\n";
        } else {
            for (int m = 2; m <= n / 2; ++m) {
                // Mark the outer corner of B(m), where the segment I_m ends.
                int x = box_x(m) + kCell;
                int y = box_y(n, m);
                svg << "    <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\"/>\n";
                svg << "    <text id=\"segment-I_" << m << "\" x=\"" << x + 6 << "\" y=\"" << y - 6 << "\">I_" << m
                    << "</text>\n";
            }
        }
        svg << "  </g>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string render_ascii(int n, const DiagramStyle& style) {
    if (n < 3) throw std::invalid_argument("render_ascii requires n >= 3");
    std::ostringstream out;
    out << "Gamma(" << n << ")";
    if (style.shade_m) out << ", B(" << *style.shade_m << ") shaded";
    out << "\n";
    for (int j = n - 1; j >= 1; --j) {
        for (int i = 1; i + j <= n; ++i) {
            bool shaded = style.shade_m && in_box(*style.shade_m, {i, j});
            bool hor = style.mark_hor && *style.mark_hor == i && j <= n - *style.mark_hor;
            bool ver = style.mark_ver && *style.mark_ver == j && i <= n - *style.mark_ver;
            char c = shaded ? '#' : '.';
            if (hor && ver) c = '+';
            else if (hor) c = '|';
            else if (ver) c = '-';
            out << c;
        }
        out << "\n";
    }
    if (style.segment_labels) {
        out << "segments:";
        if (n == 3) out << " I";
        else
            for (int m = 2; m <= n / 2; ++m) out << " I_" << m;
        out << "\n";
    }
    return out.str();
}

} // namespace gcfiber
