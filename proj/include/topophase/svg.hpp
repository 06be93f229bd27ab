// Copyright 2026 The topophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal self-contained SVG plots for campaign output.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "topophase/angles.hpp"
#include "topophase/fringe_fit.hpp"
#include "topophase/sagnac.hpp"

namespace topophase {

struct FringePanel {
    int dim;
    struct Series {
        double t;
        FringeScan scan;
        std::optional<FitResult> fit;
    };
    std::vector<Series> series;
};

struct ShiftPoint {
    int dim;
    double shift_deg;
    double sigma_deg;
    double theory_deg;
};

namespace detail {

struct Box {
    double x, y, w, h;
};

inline std::string axis_frame(const Box& b, const std::string& title, const std::string& xlabel,
                              const std::string& ylabel) {
    std::string s;
    s += fmt::format("<rect x='{:.1f}' y='{:.1f}' width='{:.1f}' height='{:.1f}' fill='none' stroke='#333'/>\n",
                     b.x, b.y, b.w, b.h);
    s += fmt::format("<text x='{:.1f}' y='{:.1f}' font-size='13' text-anchor='middle'>{}</text>\n", b.x + b.w / 2,
                     b.y - 8, title);
    s += fmt::format("<text x='{:.1f}' y='{:.1f}' font-size='11' text-anchor='middle'>{}</text>\n", b.x + b.w / 2,
                     b.y + b.h + 30, xlabel);
    s += fmt::format(
        "<text x='{:.1f}' y='{:.1f}' font-size='11' text-anchor='middle' transform='rotate(-90 {:.1f} {:.1f})'>{}</text>\n",
        b.x - 40, b.y + b.h / 2, b.x - 40, b.y + b.h / 2, ylabel);
    return s;
}

inline std::string tick(double x, double y, const std::string& label, bool horizontal_axis) {
    if (horizontal_axis) {
        return fmt::format(
            "<line x1='{0:.1f}' y1='{1:.1f}' x2='{0:.1f}' y2='{2:.1f}' stroke='#333'/>"
            "<text x='{0:.1f}' y='{3:.1f}' font-size='10' text-anchor='middle'>{4}</text>\n",
            x, y, y + 4, y + 16, label);
    }
    return fmt::format(
        "<line x1='{0:.1f}' y1='{1:.1f}' x2='{2:.1f}' y2='{1:.1f}' stroke='#333'/>"
        "<text x='{3:.1f}' y='{4:.1f}' font-size='10' text-anchor='end'>{5}</text>\n",
        x, y, x - 4, x - 6, y + 3, label);
}

}  // namespace detail

/// One fringe panel per dimension (points + fitted curve per t) and a
/// shift-versus-dimension chart with theory markers.
inline std::string campaign_svg(const std::vector<FringePanel>& panels, const std::vector<ShiftPoint>& shifts) {
    constexpr std::array<const char*, 6> colors{"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
    const double panel_w = 320, panel_h = 220, margin = 70, gap = 40;
    const std::size_t cells = panels.size() + 1;
    const double width = margin + cells * (panel_w + gap + margin / 2);
    const double height = panel_h + 2 * margin + 30;

    std::string svg = fmt::format(
        "<svg xmlns='http://www.w3.org/2000/svg' width='{:.0f}' height='{:.0f}' font-family='sans-serif'>\n"
        "<rect width='100%' height='100%' fill='white'/>\n",
        width, height);

    double x0 = margin;
    for (const auto& panel : panels) {
        const detail::Box box{x0, margin, panel_w, panel_h};
        double tmin = 0, tmax = 1, ymax = 0;
        bool first = true;
        for (const auto& s : panel.series) {
            for (const auto& p : s.scan.points) {
                if (first || p.theta < tmin) tmin = p.theta;
                if (first || p.theta > tmax) tmax = p.theta;
                ymax = std::max(ymax, p.value);
                first = false;
            }
        }
        if (tmax <= tmin) tmax = tmin + 1;
        if (ymax <= 0) ymax = 1;
        ymax *= 1.05;
        auto px = [&](double th) { return box.x + (th - tmin) / (tmax - tmin) * box.w; };
        auto py = [&](double y) { return box.y + box.h - y / ymax * box.h; };

        svg += detail::axis_frame(box, fmt::format("d = {}", panel.dim), "phase-shifter angle (deg)",
                                  panel.series.empty() || panel.series.front().scan.mode == ScanMode::Exact
                                      ? "coincidence probability"
                                      : "coincidence counts");
        for (int k = 0; k <= 4; ++k) {
            const double th = tmin + (tmax - tmin) * k / 4;
            svg += detail::tick(px(th), box.y + box.h, fmt::format("{:.0f}", rad_to_deg(th)), true);
            const double y = ymax * k / 4;
            svg += detail::tick(box.x, py(y), fmt::format("{:.3g}", y), false);
        }
        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const auto& s = panel.series[si];
            const char* color = colors[si % colors.size()];
            for (const auto& p : s.scan.points) {
                svg += fmt::format("<circle cx='{:.2f}' cy='{:.2f}' r='2.5' fill='{}'/>\n", px(p.theta), py(p.value),
                                   color);
            }
            if (s.fit) {
                std::string path;
                for (int k = 0; k <= 200; ++k) {
                    const double th = tmin + (tmax - tmin) * k / 200;
                    path += fmt::format("{}{:.2f},{:.2f}", k ? " L" : "M", px(th), py(s.fit->model(th)));
                }
                svg += fmt::format("<path d='{}' fill='none' stroke='{}' stroke-width='1.2'/>\n", path, color);
            }
            svg += fmt::format("<text x='{:.1f}' y='{:.1f}' font-size='10' fill='{}'>t = {:g}</text>\n",
                               box.x + box.w + 6, box.y + 10 + 12 * si, color, s.t);
        }
        x0 += panel_w + gap + margin / 2;
    }

    // shift vs dimension
    const detail::Box box{x0, margin, panel_w, panel_h};
    svg += detail::axis_frame(box, "fringe shift vs dimension", "dimension d", "shift (deg)");
    int dmin = 2, dmax = 4;
    for (const auto& s : shifts) {
        dmin = std::min(dmin, s.dim);
        dmax = std::max(dmax, s.dim);
    }
    auto px = [&](double d) { return box.x + (d - dmin + 0.5) / (dmax - dmin + 1) * box.w; };
    auto py = [&](double deg) { return box.y + box.h - deg / 360.0 * box.h; };
    for (int d = dmin; d <= dmax; ++d) svg += detail::tick(px(d), box.y + box.h, std::to_string(d), true);
    for (int k = 0; k <= 4; ++k) svg += detail::tick(box.x, py(90.0 * k), std::to_string(90 * k), false);
    for (const auto& s : shifts) {
        svg += fmt::format("<circle cx='{:.2f}' cy='{:.2f}' r='6' fill='none' stroke='#1f77b4' stroke-width='1.5'/>\n",
                           px(s.dim), py(s.theory_deg));
        svg += fmt::format("<line x1='{0:.2f}' y1='{1:.2f}' x2='{0:.2f}' y2='{2:.2f}' stroke='#000'/>\n", px(s.dim),
                           py(s.shift_deg - s.sigma_deg), py(s.shift_deg + s.sigma_deg));
        svg += fmt::format("<rect x='{:.2f}' y='{:.2f}' width='7' height='7' fill='#000'/>\n", px(s.dim) - 3.5,
                           py(s.shift_deg) - 3.5);
    }
    svg += fmt::format("<text x='{:.1f}' y='{:.1f}' font-size='10'>squares: measured, circles: 360/d</text>\n",
                       box.x + 6, box.y + 14);
    svg += "</svg>\n";
    return svg;
}

}  // namespace topophase
