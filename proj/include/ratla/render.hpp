#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "scene.hpp"

namespace ratla {

/// Cabinet projection: x and y true length, depth drawn at 30 degrees and half scale.
struct CabinetProjection {
    static constexpr double depth_factor = 0.5;
    static constexpr double angle = std::numbers::pi / 6;

    static std::array<double, 2> project(double x, double y, double z) {
        return {x + depth_factor * z * std::cos(angle), y + depth_factor * z * std::sin(angle)};
    }
};

/// Uniform scale plus y-flip from figure space to SVG pixels.
struct Viewport {
    double scale = 1.0;
    double origin_x = 0.0;  // pixel column of figure x = 0
    double origin_y = 0.0;  // pixel row of figure y = 0

    double to_px_x(double x) const { return origin_x + scale * x; }
    double to_px_y(double y) const { return origin_y - scale * y; }
    double from_px_x(double px) const { return (px - origin_x) / scale; }
    double from_px_y(double py) const { return (origin_y - py) / scale; }
};

struct Style {
    std::string stroke;
    std::string fill;
};

/// A vertex with its exact source coordinates and its projected figure-space position.
struct FigureNode {
    std::string label;
    std::vector<Scalar> source;
    double x = 0;
    double y = 0;
};

enum class ElementKind { polygon, segments, dot };

struct FigureElement {
    std::string object;
    ElementKind kind = ElementKind::polygon;
    std::vector<FigureNode> nodes;
    std::vector<Edge> edges;  // segments only
    Style style;
};

struct Segment {
    double x1, y1, x2, y2;  // figure space
};

struct Figure {
    double width = 0;
    double height = 0;
    Viewport viewport;
    std::vector<FigureElement> elements;
    std::vector<Segment> axes;
    std::vector<std::string> comments;
};

namespace detail {

inline const std::array<Style, 6>& palette() {
    static const std::array<Style, 6> colors{{
        {"#1f4e9c", "#1f4e9c"},
        {"#c0392b", "#c0392b"},
        {"#1e8449", "#1e8449"},
        {"#8e44ad", "#8e44ad"},
        {"#d35400", "#d35400"},
        {"#117a65", "#117a65"},
    }};
    return colors;
}

/// Parameter range of the ray origin + t*dir inside the box, t >= 0.
inline double ray_exit(double dx, double dy, double x0, double x1, double y0, double y1) {
    double t = std::numeric_limits<double>::infinity();
    if (dx > 0) t = std::min(t, x1 / dx);
    if (dx < 0) t = std::min(t, x0 / dx);
    if (dy > 0) t = std::min(t, y1 / dy);
    if (dy < 0) t = std::min(t, y0 / dy);
    return t;
}

}  // namespace detail

inline constexpr double figure_target_px = 600.0;
inline constexpr double figure_margin_fraction = 0.1;

/**
 * Lays the rendered objects out on a canvas.
 *
 * 3D scenes go through the cabinet projection first. The scale never drops
 * below one pixel per unit, so 6-decimal pixel coordinates invert to within
 * 1e-6 of the figure-space values. Each side gets a margin of 10% of the
 * larger content extent.
 */
inline Figure layout_project(const Scene& scene) {
    Figure fig;
    fig.comments = scene_measurements(scene);

    std::vector<std::string> names;
    for (const auto& d : scene.directives) {
        if (const auto* r = std::get_if<RenderDirective>(&d)) {
            for (const auto& n : r->names) {
                if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
            }
        }
    }
    bool any_render = std::any_of(scene.directives.begin(), scene.directives.end(),
                                  [](const Directive& d) { return std::holds_alternative<RenderDirective>(d); });
    if (!any_render) {
        for (const auto& o : scene.objects) names.push_back(o.name);
    }

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto& obj = scene.get(names[k]);
        FigureElement el;
        el.object = obj.name;
        el.style = detail::palette()[k % detail::palette().size()];
        for (const auto& v : obj.shape.vertices) {
            FigureNode node{v.label, v.coords, 0, 0};
            if (v.coords.size() == 3) {
                auto p = CabinetProjection::project(v.coords[0].to_double(), v.coords[1].to_double(),
                                                    v.coords[2].to_double());
                node.x = p[0];
                node.y = p[1];
            } else {
                node.x = v.coords[0].to_double();
                node.y = v.coords[1].to_double();
            }
            xmin = std::min(xmin, node.x);
            xmax = std::max(xmax, node.x);
            ymin = std::min(ymin, node.y);
            ymax = std::max(ymax, node.y);
            el.nodes.push_back(std::move(node));
        }
        if (obj.kind == ObjectKind::point || el.nodes.size() == 1) {
            el.kind = ElementKind::dot;
        } else if (obj.kind == ObjectKind::polygon && el.nodes.size() >= 3) {
            el.kind = ElementKind::polygon;
        } else {
            el.kind = ElementKind::segments;
            el.edges = obj.shape.edges;
        }
        fig.elements.push_back(std::move(el));
    }

    if (xmin > xmax) {
        xmin = ymin = -1;
        xmax = ymax = 1;
    }
    if (xmax - xmin < 1e-9) {
        xmin -= 1;
        xmax += 1;
    }
    if (ymax - ymin < 1e-9) {
        ymin -= 1;
        ymax += 1;
    }
    const double mx = figure_margin_fraction * std::max(xmax - xmin, ymax - ymin);
    const double my = mx;
    xmin -= mx;
    xmax += mx;
    ymin -= my;
    ymax += my;

    const double scale = std::max(1.0, figure_target_px / std::max(xmax - xmin, ymax - ymin));
    fig.viewport = {scale, -xmin * scale, ymax * scale};
    fig.width = (xmax - xmin) * scale;
    fig.height = (ymax - ymin) * scale;

    const bool x_in = xmin <= 0 && 0 <= xmax;
    const bool y_in = ymin <= 0 && 0 <= ymax;
    if (x_in && y_in) {
        fig.axes.push_back({xmin, 0, xmax, 0});
        fig.axes.push_back({0, ymin, 0, ymax});
        if (scene.dimension == 3) {
            auto dir = CabinetProjection::project(0, 0, 1);
            double fwd = detail::ray_exit(dir[0], dir[1], xmin, xmax, ymin, ymax);
            double back = detail::ray_exit(-dir[0], -dir[1], xmin, xmax, ymin, ymax);
            fig.axes.push_back({-back * dir[0], -back * dir[1], fwd * dir[0], fwd * dir[1]});
        }
    } else if (y_in) {
        fig.axes.push_back({xmin, 0, xmax, 0});
    } else if (x_in) {
        fig.axes.push_back({0, ymin, 0, ymax});
    }
    return fig;
}

/// Fixed 6-decimal formatting; negative zero prints as zero.
inline std::string format_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Comments may not contain "--".
inline std::string comment_safe(std::string s) {
    for (std::size_t i = s.find("--"); i != std::string::npos; i = s.find("--", i)) s.replace(i, 2, "- ");
    return s;
}

}  // namespace detail

/// Standalone SVG 1.1 document; identical figures give identical bytes.
inline std::string emit_svg(const Figure& fig) {
    const auto& vp = fig.viewport;
    auto px = [&](double x) { return format_coord(vp.to_px_x(x)); };
    auto py = [&](double y) { return format_coord(vp.to_px_y(y)); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_coord(fig.width) +
           "\" height=\"" + format_coord(fig.height) + "\" viewBox=\"0 0 " + format_coord(fig.width) + " " +
           format_coord(fig.height) + "\">\n";
    for (const auto& c : fig.comments) out += "<!-- " + detail::comment_safe(c) + " -->\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + format_coord(fig.width) + "\" height=\"" + format_coord(fig.height) +
           "\" fill=\"#ffffff\"/>\n";

    out += "<g class=\"axes\" stroke=\"#9a9a9a\" stroke-width=\"1\">\n";
    for (const auto& a : fig.axes) {
        out += "<line x1=\"" + px(a.x1) + "\" y1=\"" + py(a.y1) + "\" x2=\"" + px(a.x2) + "\" y2=\"" + py(a.y2) +
               "\"/>\n";
    }
    out += "</g>\n";

    for (const auto& el : fig.elements) {
        out += "<g class=\"object\" id=\"" + detail::xml_escape(el.object) + "\" stroke=\"" + el.style.stroke +
               "\" stroke-width=\"2\">\n";
        switch (el.kind) {
            case ElementKind::polygon: {
                out += "<polygon points=\"";
                for (std::size_t i = 0; i < el.nodes.size(); ++i) {
                    if (i) out += ' ';
                    out += px(el.nodes[i].x) + "," + py(el.nodes[i].y);
                }
                out += "\" fill=\"" + el.style.fill + "\" fill-opacity=\"0.2\"/>\n";
                break;
            }
            case ElementKind::segments: {
                for (const auto& [a, b] : el.edges) {
                    out += "<line x1=\"" + px(el.nodes[a].x) + "\" y1=\"" + py(el.nodes[a].y) + "\" x2=\"" +
                           px(el.nodes[b].x) + "\" y2=\"" + py(el.nodes[b].y) + "\"/>\n";
                }
                break;
            }
            case ElementKind::dot: break;
        }
        for (const auto& n : el.nodes) {
            out += "<circle cx=\"" + px(n.x) + "\" cy=\"" + py(n.y) + "\" r=\"3\" fill=\"" + el.style.fill +
                   "\" stroke=\"none\"/>\n";
        }
        for (const auto& n : el.nodes) {
            if (n.label.empty()) continue;
            out += "<text x=\"" + format_coord(vp.to_px_x(n.x) + 5) + "\" y=\"" + format_coord(vp.to_px_y(n.y) - 5) +
                   "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" + el.style.fill + "\" stroke=\"none\">" +
                   detail::xml_escape(n.label) + "</text>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

/// parse_scene, layout_project and emit_svg in one call.
inline std::string render_scene(std::string_view text) { return emit_svg(layout_project(parse_scene(text))); }

}  // namespace ratla
