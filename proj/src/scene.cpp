#include "cspace/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cspace/error.hpp"

namespace cspace {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& msg) {
    throw Error(ErrorCode::SchemaError, pointer + ": " + msg);
}

double number_at(const json& j, const std::string& ptr) {
    if (!j.is_number()) schema(ptr, "expected a number");
    return j.get<double>();
}

Point point_at(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2) schema(ptr, "expected [x, y]");
    return {number_at(j[0], ptr + "/0"), number_at(j[1], ptr + "/1")};
}

Ring ring_at(const json& j, const std::string& ptr) {
    if (!j.is_array()) schema(ptr, "expected an array of points");
    Ring r;
    for (std::size_t i = 0; i < j.size(); ++i) r.push_back(point_at(j[i], ptr + "/" + std::to_string(i)));
    return r;
}

json point_json(const Point& p) { return json::array({p.x, p.y}); }

json ring_json(const Ring& r) {
    json a = json::array();
    for (const auto& p : r) a.push_back(point_json(p));
    return a;
}

json rings_json(const MultiPolygon& m) {
    json rings = json::array();
    for (const auto& poly : m.polygons()) {
        rings.push_back(ring_json(poly.outer));
        for (const auto& h : poly.holes) rings.push_back({{"points", ring_json(h)}, {"hole", true}});
    }
    return rings;
}

void check_ring(const Ring& r, const std::string& ptr, double eps) {
    const Ring c = clean_ring(r, eps);
    if (c.size() < 3 || std::abs(signed_area(c)) <= eps) throw Error(ErrorCode::InvalidRing, ptr + ": ring needs 3 non-collinear vertices");
    if (!is_simple(c, eps)) throw Error(ErrorCode::InvalidRing, ptr + ": ring self-intersects");
}

// Outer rings start a polygon; hole rings attach to the polygon before them.
MultiPolygon rings_at(const json& j, const std::string& ptr, double eps, bool validate) {
    if (!j.is_array()) schema(ptr, "expected an array of rings");
    std::vector<Polygon> polys;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rp = ptr + "/" + std::to_string(i);
        const json& rj = j[i];
        bool hole = false;
        Ring r;
        if (rj.is_object()) {
            if (!rj.contains("points")) schema(rp, "ring object needs \"points\"");
            r = ring_at(rj["points"], rp + "/points");
            if (rj.contains("hole")) {
                if (!rj["hole"].is_boolean()) schema(rp + "/hole", "expected a boolean");
                hole = rj["hole"].get<bool>();
            }
        } else {
            r = ring_at(rj, rp);
        }
        if (validate) check_ring(r, rp, eps);
        if (hole) {
            if (polys.empty()) schema(rp, "hole before any outer ring");
            polys.back().holes.push_back(std::move(r));
        } else {
            polys.push_back({std::move(r), {}});
        }
    }
    return MultiPolygon(std::move(polys));
}

Box box_at(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2) schema(ptr, "expected [[x0, y0], [x1, y1]]");
    Box b{point_at(j[0], ptr + "/0"), point_at(j[1], ptr + "/1")};
    if (b.empty()) schema(ptr, "window is empty");
    return b;
}

const char* flag_name(Flag f) { return to_string(f); }

Flag flag_at(const json& j, const std::string& ptr) {
    if (j == "INCLUDED") return Flag::Included;
    if (j == "EXCLUDED") return Flag::Excluded;
    if (j == "AMBIGUOUS") return Flag::Ambiguous;
    schema(ptr, "expected INCLUDED, EXCLUDED or AMBIGUOUS");
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        schema("", std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

const MultiPolygon& Scene::object(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) throw Error(ErrorCode::UnknownObject, "unknown object: " + name);
    return it->second;
}

std::vector<std::string> Scene::obstacles() const {
    if (!groups.empty()) return groups.begin()->second;
    std::vector<std::string> out;
    for (const auto& [name, obj] : objects)
        if (name != subject && (!container || name != *container)) out.push_back(name);
    return out;
}

Scene parse_scene(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) schema("", "expected an object");
    if (j.contains("schema") && j["schema"] != "cspace-scene/1") schema("/schema", "expected \"cspace-scene/1\"");
    Scene s;
    if (j.contains("config")) {
        const json& c = j["config"];
        if (!c.is_object()) schema("/config", "expected an object");
        if (c.contains("eps")) s.config.eps = number_at(c["eps"], "/config/eps");
        if (c.contains("eps_cmp")) s.config.eps_cmp = number_at(c["eps_cmp"], "/config/eps_cmp");
        if (c.contains("disk_segments")) {
            if (!c["disk_segments"].is_number_integer()) schema("/config/disk_segments", "expected an integer");
            s.config.disk_segments = c["disk_segments"].get<int>();
            if (s.config.disk_segments < 8 || s.config.disk_segments % 4 != 0)
                schema("/config/disk_segments", "expected a multiple of 4, at least 8");
        }
        if (c.contains("window")) s.config.window = box_at(c["window"], "/config/window");
        if (!(s.config.eps > 0)) schema("/config/eps", "must be positive");
        if (!(s.config.eps_cmp > 0)) schema("/config/eps_cmp", "must be positive");
    }
    if (!j.contains("objects") || !j["objects"].is_object()) schema("/objects", "expected an object of named regions");
    for (const auto& [name, o] : j["objects"].items()) {
        const std::string ptr = "/objects/" + name;
        if (!o.is_object() || !o.contains("rings")) schema(ptr, "expected {\"rings\": [...]}");
        const MultiPolygon raw = rings_at(o["rings"], ptr + "/rings", s.config.eps, true);
        std::vector<MultiPolygon> parts;
        for (const auto& p : raw.polygons()) parts.push_back(normalize(MultiPolygon({p}), s.config.eps));
        MultiPolygon m = union_all(std::move(parts));
        if (m.empty()) throw Error(ErrorCode::InvalidRing, ptr + "/rings: region is empty");
        s.objects.emplace(name, std::move(m));
    }
    if (j.contains("groups")) {
        if (!j["groups"].is_object()) schema("/groups", "expected an object");
        for (const auto& [name, g] : j["groups"].items()) {
            const std::string ptr = "/groups/" + name;
            if (!g.is_array()) schema(ptr, "expected an array of object names");
            std::vector<std::string> members;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!g[i].is_string()) schema(ptr + "/" + std::to_string(i), "expected a string");
                const std::string m = g[i].get<std::string>();
                if (!s.has_object(m)) schema(ptr + "/" + std::to_string(i), "unknown object " + m);
                members.push_back(m);
            }
            if (s.has_object(name)) schema(ptr, "group name clashes with an object");
            s.groups.emplace(name, std::move(members));
        }
    }
    if (j.contains("container")) {
        if (!j["container"].is_string()) schema("/container", "expected a string");
        s.container = j["container"].get<std::string>();
        if (!s.has_object(*s.container)) schema("/container", "unknown object " + *s.container);
    }
    if (j.contains("subject")) {
        if (!j["subject"].is_string()) schema("/subject", "expected a string");
        s.subject = j["subject"].get<std::string>();
    }
    return s;
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path)); }

std::string scene_to_json(const Scene& s) {
    json j;
    j["schema"] = "cspace-scene/1";
    json objs = json::object();
    for (const auto& [name, m] : s.objects) objs[name] = {{"rings", rings_json(m)}};
    j["objects"] = objs;
    if (!s.groups.empty()) j["groups"] = s.groups;
    if (s.container) j["container"] = *s.container;
    j["subject"] = s.subject;
    json c = {{"eps", s.config.eps}, {"eps_cmp", s.config.eps_cmp}, {"disk_segments", s.config.disk_segments}};
    if (s.config.window)
        c["window"] = json::array({point_json(s.config.window->min), point_json(s.config.window->max)});
    j["config"] = c;
    return j.dump(2) + "\n";
}

std::string map_to_json(const RegionNR& r, const std::vector<std::string>& diagnostics) {
    json j;
    j["schema"] = "cspace-map/1";
    j["window"] = json::array({point_json(r.window.min), point_json(r.window.max)});
    j["area"] = rings_json(r.area);
    // Consecutive segments that chain end to start with one flag form a run.
    json runs = json::array();
    for (std::size_t i = 0; i < r.segments.size();) {
        const Flag f = r.segments[i].flag;
        json pts = json::array({point_json(r.segments[i].a), point_json(r.segments[i].b)});
        std::size_t k = i + 1;
        while (k < r.segments.size() && r.segments[k].flag == f && r.segments[k].a == r.segments[k - 1].b) {
            pts.push_back(point_json(r.segments[k].b));
            ++k;
        }
        runs.push_back({{"flag", flag_name(f)}, {"points", pts}});
        i = k;
    }
    j["flag_runs"] = runs;
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({{"p", point_json(p.p)}, {"flag", flag_name(p.flag)}});
    j["points"] = pts;
    j["diagnostics"] = diagnostics;
    return j.dump(2) + "\n";
}

RegionNR map_from_json(const std::string& text, std::vector<std::string>* diagnostics) {
    const json j = parse_json(text);
    if (!j.is_object() || j.value("schema", "") != "cspace-map/1") schema("/schema", "expected \"cspace-map/1\"");
    RegionNR r;
    if (!j.contains("window")) schema("/window", "missing");
    r.window = box_at(j["window"], "/window");
    if (!j.contains("area")) schema("/area", "missing");
    r.area = rings_at(j["area"], "/area", kDefaultEps, false);
    if (j.contains("flag_runs")) {
        const json& runs = j["flag_runs"];
        if (!runs.is_array()) schema("/flag_runs", "expected an array");
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const std::string ptr = "/flag_runs/" + std::to_string(i);
            if (!runs[i].is_object() || !runs[i].contains("flag") || !runs[i].contains("points"))
                schema(ptr, "expected {\"flag\", \"points\"}");
            const Flag f = flag_at(runs[i]["flag"], ptr + "/flag");
            const Ring pts = ring_at(runs[i]["points"], ptr + "/points");
            if (pts.size() < 2) schema(ptr + "/points", "a run needs 2 points");
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) r.segments.push_back({pts[k], pts[k + 1], f});
        }
    }
    if (j.contains("points")) {
        const json& ps = j["points"];
        if (!ps.is_array()) schema("/points", "expected an array");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string ptr = "/points/" + std::to_string(i);
            if (!ps[i].is_object() || !ps[i].contains("p") || !ps[i].contains("flag")) schema(ptr, "expected {\"p\", \"flag\"}");
            r.points.push_back({point_at(ps[i]["p"], ptr + "/p"), flag_at(ps[i]["flag"], ptr + "/flag")});
        }
    }
    if (diagnostics && j.contains("diagnostics") && j["diagnostics"].is_array())
        for (const auto& d : j["diagnostics"])
            if (d.is_string()) diagnostics->push_back(d.get<std::string>());
    return r;
}

void save_map(const RegionNR& r, const std::string& path, const std::vector<std::string>& diagnostics) {
    write_file(path, map_to_json(r, diagnostics));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::SchemaError, path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, path + ": cannot write");
    out << data;
}

}  // namespace cspace
