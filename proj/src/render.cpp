#include "cspace/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cspace {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0 ? 0.0 : v);
    return buf;
}

struct View {
    Box box;
    double scale;
    int width, height;

    std::string pt(const Point& p) const {
        return fmt((p.x - box.min.x) * scale) + "," + fmt((box.max.y - p.y) * scale);
    }
};

std::string path_of(const MultiPolygon& m, const View& v) {
    std::string d;
    auto ring = [&](const Ring& r) {
        for (std::size_t i = 0; i < r.size(); ++i) d += (i ? " L" : "M") + v.pt(r[i]);
        if (!r.empty()) d += " Z ";
    };
    for (const auto& p : m.polygons()) {
        ring(p.outer);
        for (const auto& h : p.holes) ring(h);
    }
    return d;
}

const char* flag_color(Flag f) {
    switch (f) {
        case Flag::Included: return "#2ca02c";
        case Flag::Excluded: return "#d62728";
        default: return "#ff7f0e";
    }
}

}  // namespace

std::string render_svg(const Scene& scene, const RegionNR& region, const SvgOptions& opt) {
    Box box = region.window;
    if (box.empty())
        for (const auto& [name, m] : scene.objects) box.expand(m.bbox());
    if (box.empty()) box = Box{{0, 0}, {1, 1}};
    const double w = std::max(box.width(), 1e-9);
    View v{box, opt.width / w, opt.width, static_cast<int>(std::ceil(opt.width * box.height() / w))};

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(v.width) + "\" height=\"" +
         std::to_string(v.height) + "\" viewBox=\"0 0 " + std::to_string(v.width) + " " + std::to_string(v.height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(v.width) + "\" height=\"" + std::to_string(v.height) +
         "\" fill=\"white\"/>\n";

    s += "<g id=\"region\">\n";
    if (!region.area.empty())
        s += "<path d=\"" + path_of(region.area, v) + "\" fill=\"#a6d8a6\" fill-opacity=\"0.6\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
    for (const auto& seg : region.segments)
        s += "<line x1=\"" + fmt((seg.a.x - box.min.x) * v.scale) + "\" y1=\"" + fmt((box.max.y - seg.a.y) * v.scale) +
             "\" x2=\"" + fmt((seg.b.x - box.min.x) * v.scale) + "\" y2=\"" + fmt((box.max.y - seg.b.y) * v.scale) +
             "\" stroke=\"" + flag_color(seg.flag) + "\" stroke-width=\"2\"/>\n";
    for (const auto& p : region.points)
        s += "<circle cx=\"" + fmt((p.p.x - box.min.x) * v.scale) + "\" cy=\"" + fmt((box.max.y - p.p.y) * v.scale) +
             "\" r=\"3\" fill=\"" + flag_color(p.flag) + "\"/>\n";
    s += "</g>\n";

    if (opt.draw_objects) {
        s += "<g id=\"objects\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
        for (const auto& [name, m] : scene.objects) {
            s += "<path d=\"" + path_of(m, v) + "\"/>\n";
            const Box b = m.bbox();
            s += "<text x=\"" + fmt((b.min.x - box.min.x) * v.scale) + "\" y=\"" + fmt((box.max.y - b.max.y) * v.scale - 2) +
                 "\" font-size=\"12\" fill=\"black\" stroke=\"none\">" + name + "</text>\n";
        }
        s += "</g>\n";
    }

    for (const auto& layer : opt.layers) {
        s += "<g id=\"" + layer.label + "\" fill=\"none\" stroke=\"" + layer.stroke + "\" stroke-width=\"1\"";
        if (!layer.dash.empty()) s += " stroke-dasharray=\"" + layer.dash + "\"";
        s += ">\n<path d=\"" + path_of(layer.region, v) + "\"/>\n</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace cspace
