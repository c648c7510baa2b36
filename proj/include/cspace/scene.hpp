#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cspace/geom.hpp"
#include "cspace/region.hpp"

namespace cspace {

struct SceneConfig {
    double eps = kDefaultEps;
    double eps_cmp = 1e-7;
    int disk_segments = 64;
    std::optional<Box> window;
};

/// Named objects, obstacle groups, an optional container and the moving subject.
struct Scene {
    std::map<std::string, MultiPolygon> objects;
    std::map<std::string, std::vector<std::string>> groups;
    std::optional<std::string> container;
    std::string subject = "B";
    SceneConfig config;

    bool has_object(const std::string& name) const { return objects.count(name) != 0; }
    bool has_group(const std::string& name) const { return groups.count(name) != 0; }
    /// Throws UNKNOWN_OBJECT.
    const MultiPolygon& object(const std::string& name) const;
    /// Members of the first declared group, or every object that is neither subject nor container.
    std::vector<std::string> obstacles() const;
};

/// "cspace-scene/1". Throws SCHEMA_ERROR (message starts with a JSON pointer) or INVALID_RING.
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);
std::string scene_to_json(const Scene& s);

/// "cspace-map/1": window, area rings, flag runs along segments, points, diagnostics.
std::string map_to_json(const RegionNR& r, const std::vector<std::string>& diagnostics = {});
RegionNR map_from_json(const std::string& text, std::vector<std::string>* diagnostics = nullptr);
void save_map(const RegionNR& r, const std::string& path, const std::vector<std::string>& diagnostics = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace cspace
