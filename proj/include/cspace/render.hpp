#pragma once

#include <string>
#include <vector>

#include "cspace/region.hpp"
#include "cspace/scene.hpp"

namespace cspace {

struct SvgLayer {
    std::string label;
    MultiPolygon region;
    std::string stroke = "#1f77b4";
    std::string dash;  // stroke-dasharray, empty for solid
};

struct SvgOptions {
    int width = 800;
    bool draw_objects = true;
    std::vector<SvgLayer> layers;
};

/// SVG 1.1 in scene coordinates (y up): objects outlined, region area filled, its flagged
/// boundary stroked by flag, features overdrawn, family layers dashed on top.
std::string render_svg(const Scene& scene, const RegionNR& region, const SvgOptions& opt = {});

}  // namespace cspace
