#pragma once

#include <string>

#include "layout/priors.hpp"
#include "layout/scene.hpp"

namespace layout {

struct RenderOptions {
    double scale = 60.0;           // pixels per meter
    bool draw_labels = true;
    bool hsv_orientation = true;   // map template orientations to hue
};

// Top view: room polygon, oriented object boxes with heading ticks, labels,
// fixtures dashed.
std::string render_scene_svg(const Scene& scene, const RenderOptions& options);

// Scatter of (px, pz) with hue = ptheta / 2pi, saturation = normalized weight,
// value 1; pattern centers ringed; the anchor marked at the origin.
std::string render_template_svg(const Template& tmpl, const RenderOptions& options);

}  // namespace layout
