#include "layout/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace layout {

namespace {

constexpr double kMarginMeters = 0.6;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

struct Mapper {
    double min_x, max_z, scale;
    double px(double x) const { return (x - min_x + kMarginMeters) * scale; }
    double py(double z) const { return (max_z + kMarginMeters - z) * scale; }  // +z points up
};

std::string hsv_to_hex(double h, double s, double v) {
    h = h - std::floor(h);  // [0,1)
    double c = v * s;
    double hp = h * 6.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    double m = v - c;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)),
                  static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

void emit_box(std::ostringstream& svg, const Mapper& map, const ObjectInstance& obj,
              const char* fill, const char* extra, bool label) {
    auto corners = box_corners(obj.footprint());
    svg << "  <g>\n    <polygon points=\"";
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) svg << ' ';
        svg << fmt(map.px(corners[i].x)) << ',' << fmt(map.py(corners[i].z));
    }
    svg << "\" fill=\"" << fill << "\" stroke=\"#334\" stroke-width=\"1.5\"" << extra
        << "/>\n";
    // heading tick from the center toward the facing direction
    Vec2 tip = obj.center() + rotate({std::min(obj.hx, obj.hz) * 0.8, 0.0}, obj.pose.theta);
    svg << "    <line x1=\"" << fmt(map.px(obj.pose.x)) << "\" y1=\"" << fmt(map.py(obj.pose.z))
        << "\" x2=\"" << fmt(map.px(tip.x)) << "\" y2=\"" << fmt(map.py(tip.z))
        << "\" stroke=\"#334\" stroke-width=\"1.5\"/>\n";
    if (label)
        svg << "    <text x=\"" << fmt(map.px(obj.pose.x)) << "\" y=\""
            << fmt(map.py(obj.pose.z) - 4.0) << "\" font-size=\"10\" text-anchor=\"middle\" "
               "fill=\"#222\">"
            << escape_xml(obj.category) << "</text>\n";
    svg << "  </g>\n";
}

}  // namespace

std::string render_scene_svg(const Scene& scene, const RenderOptions& options) {
    double min_x = 0, max_x = 1, min_z = 0, max_z = 1;
    if (!scene.room.vertices.empty()) {
        min_x = max_x = scene.room.vertices[0].x;
        min_z = max_z = scene.room.vertices[0].z;
        for (const Point2& v : scene.room.vertices) {
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_z = std::min(min_z, v.z);
            max_z = std::max(max_z, v.z);
        }
    }
    Mapper map{min_x, max_z, options.scale};
    double width = (max_x - min_x + 2 * kMarginMeters) * options.scale;
    double height = (max_z - min_z + 2 * kMarginMeters) * options.scale;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    svg << "  <polygon points=\"";
    for (std::size_t i = 0; i < scene.room.vertices.size(); ++i) {
        const Point2& v = scene.room.vertices[i];
        if (i) svg << ' ';
        svg << fmt(map.px(v.x)) << ',' << fmt(map.py(v.z));
    }
    svg << "\" fill=\"#f8f5ee\" stroke=\"#222\" stroke-width=\"3\"/>\n";
    for (const ObjectInstance& fix : scene.fixtures)
        emit_box(svg, map, fix, "none", " stroke-dasharray=\"5,4\"", options.draw_labels);
    for (const ObjectInstance& obj : scene.objects)
        emit_box(svg, map, obj, "#cdd9e5", "", options.draw_labels);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_template_svg(const Template& tmpl, const RenderOptions& options) {
    double extent = 0.5;
    double max_weight = 0.0;
    for (const TemplatePoint& p : tmpl.points) {
        extent = std::max({extent, std::fabs(p.sample.px), std::fabs(p.sample.pz)});
        max_weight = std::max(max_weight, p.weight);
    }
    extent += kMarginMeters;
    double size = 2.0 * extent * options.scale;
    auto px = [&](double x) { return (x + extent) * options.scale; };
    auto py = [&](double z) { return (extent - z) * options.scale; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
        << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << ' ' << fmt(size) << "\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(size) << "\" height=\"" << fmt(size)
        << "\" fill=\"#ffffff\"/>\n";
    for (const TemplatePoint& p : tmpl.points) {
        std::string color = options.hsv_orientation
                                ? hsv_to_hex(p.sample.ptheta / kTau,
                                             max_weight > 0 ? p.weight / max_weight : 1.0, 1.0)
                                : "#555555";
        svg << "  <circle cx=\"" << fmt(px(p.sample.px)) << "\" cy=\"" << fmt(py(p.sample.pz))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    for (std::size_t c : tmpl.centers) {
        const RelationSample& s = tmpl.points[c].sample;
        svg << "  <circle cx=\"" << fmt(px(s.px)) << "\" cy=\"" << fmt(py(s.pz))
            << "\" r=\"6\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";
    }
    // anchor at the origin
    svg << "  <circle cx=\"" << fmt(px(0.0)) << "\" cy=\"" << fmt(py(0.0))
        << "\" r=\"4\" fill=\"none\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace layout
