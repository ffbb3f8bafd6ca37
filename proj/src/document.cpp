#include "freeze/document.hpp"

#include <fstream>
#include <stdexcept>

namespace freeze {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& message) {
    throw std::invalid_argument(context.empty() ? message : context + ": " + message);
}

Point point_from_json(const json& j, int expected_dim, const std::string& context) {
    if (!j.is_array()) fail(context, "expected a coordinate array");
    Point p;
    p.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number_integer()) fail(context, "coordinates must be integers");
        p.push_back(c.get<Coord>());
    }
    if (expected_dim > 0 && static_cast<int>(p.size()) != expected_dim)
        fail(context, "point " + point_to_string(p) + " does not have dimension " +
                          std::to_string(expected_dim));
    return p;
}

CubeSpec cube_from_json(const json& j, int expected_dim, const std::string& context) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        fail(context, "a cube needs \"lo\" and \"hi\" arrays");
    Point lo = point_from_json(j.at("lo"), expected_dim, context + ".lo");
    Point hi = point_from_json(j.at("hi"), expected_dim, context + ".hi");
    try {
        return CubeSpec(std::move(lo), std::move(hi));
    } catch (const std::invalid_argument& e) {
        fail(context, e.what());
    }
}

} // namespace

int ImageDocument::resolve_u(const std::optional<std::string>& override_adjacency) const {
    const std::string& spec = override_adjacency ? *override_adjacency : adjacency;
    int u;
    if (spec == "c1" || spec == "C1")
        u = 1;
    else if (spec == "cN" || spec == "cn" || spec == "CN")
        u = dim;
    else {
        try {
            std::size_t pos = 0;
            u = std::stoi(spec, &pos);
            if (pos != spec.size()) throw std::invalid_argument(spec);
        } catch (const std::exception&) {
            fail("adjacency", "expected \"c1\", \"cN\" or an integer, got \"" + spec + "\"");
        }
    }
    if (u < 1 || u > dim)
        fail("adjacency", "u = " + std::to_string(u) + " out of range [1, " + std::to_string(dim) + "]");
    return u;
}

DigitalImage ImageDocument::build(const std::optional<std::string>& override_adjacency) const {
    int u = resolve_u(override_adjacency);
    if (!uses_cubes) return DigitalImage(points, u);
    PointSet pts;
    for (const auto& K : cubes) pts = set_union(pts, K.lattice_points());
    if (!holes.empty()) {
        PointSet kept;
        kept.reserve(pts.size());
        for (const auto& p : pts) {
            bool inside_hole = false;
            for (const auto& H : holes) {
                if (H.contains(p)) {
                    inside_hole = true;
                    break;
                }
            }
            if (!inside_hole) kept.push_back(p);
        }
        pts = std::move(kept);
    }
    if (pts.empty()) fail("image", "cubes minus holes leave no points");
    return DigitalImage(std::move(pts), u);
}

ImageDocument image_document_from_json(const json& j) {
    if (!j.is_object()) fail("image document", "top level must be an object");
    ImageDocument doc;
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        fail("image document", "field \"dim\" (integer) is required");
    doc.dim = j.at("dim").get<int>();
    if (doc.dim < 1 || doc.dim > kMaxDimension)
        fail("dim", "must be in [1, " + std::to_string(kMaxDimension) + "]");

    if (!j.contains("adjacency")) fail("image document", "field \"adjacency\" is required");
    const auto& adj = j.at("adjacency");
    if (adj.is_string())
        doc.adjacency = adj.get<std::string>();
    else if (adj.is_number_integer())
        doc.adjacency = std::to_string(adj.get<int>());
    else
        fail("adjacency", "expected a string or an integer");

    const bool has_points = j.contains("points");
    const bool has_cubes = j.contains("cubes");
    if (has_points == has_cubes)
        fail("image document", "exactly one of \"points\" or \"cubes\" must be present");
    if (j.contains("holes") && !has_cubes) fail("image document", "\"holes\" requires \"cubes\"");

    if (has_points) {
        if (!j.at("points").is_array()) fail("points", "expected an array of points");
        for (const auto& p : j.at("points")) doc.points.push_back(point_from_json(p, doc.dim, "points"));
        doc.points = canonical_point_set(std::move(doc.points));
        if (doc.points.empty()) fail("points", "the image must contain at least one point");
    } else {
        doc.uses_cubes = true;
        if (!j.at("cubes").is_array() || j.at("cubes").empty())
            fail("cubes", "expected a nonempty array of {lo, hi} cubes");
        for (const auto& c : j.at("cubes")) doc.cubes.push_back(cube_from_json(c, doc.dim, "cubes"));
        if (j.contains("holes")) {
            if (!j.at("holes").is_array()) fail("holes", "expected an array of {lo, hi} cubes");
            for (const auto& c : j.at("holes")) doc.holes.push_back(cube_from_json(c, doc.dim, "holes"));
        }
    }
    return doc;
}

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open file: " + file.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
}

ImageDocument load_image_document(const std::filesystem::path& file) {
    try {
        return image_document_from_json(load_json(file));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
}

PointSet point_set_from_json(const json& j, int expected_dim) {
    const json* arr = nullptr;
    if (j.is_array())
        arr = &j;
    else if (j.is_object()) {
        for (const char* key : {"points", "set", "minimal_set"}) {
            if (j.contains(key) && j.at(key).is_array()) {
                arr = &j.at(key);
                break;
            }
        }
    }
    if (!arr)
        throw std::invalid_argument(
            "point set: expected an array of points or an object with a \"points\" field");
    PointSet pts;
    for (const auto& p : *arr) pts.push_back(point_from_json(p, expected_dim, "point set"));
    return canonical_point_set(std::move(pts));
}

PointSet load_point_set(const std::filesystem::path& file, int expected_dim) {
    try {
        return point_set_from_json(load_json(file), expected_dim);
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        if (msg.find(file.string()) == std::string::npos) msg = file.string() + ": " + msg;
        throw std::invalid_argument(msg);
    }
}

CubeDecomposition decomposition_from_json(const json& j, int expected_dim) {
    const json* arr = nullptr;
    if (j.is_array())
        arr = &j;
    else if (j.is_object() && j.contains("cubes") && j.at("cubes").is_array())
        arr = &j.at("cubes");
    if (!arr)
        throw std::invalid_argument(
            "decomposition: expected an array of cubes or an object with a \"cubes\" field");
    CubeDecomposition D;
    for (const auto& c : *arr) D.cubes.push_back(cube_from_json(c, expected_dim, "cubes"));
    if (D.cubes.empty()) throw std::invalid_argument("decomposition: no cubes given");
    return D;
}

CubeDecomposition load_decomposition(const std::filesystem::path& file, int expected_dim) {
    try {
        return decomposition_from_json(load_json(file), expected_dim);
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        if (msg.find(file.string()) == std::string::npos) msg = file.string() + ": " + msg;
        throw std::invalid_argument(msg);
    }
}

json point_set_to_json(const PointSet& pts, int dim) {
    json out;
    out["dim"] = dim;
    out["count"] = pts.size();
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(p);
    out["points"] = std::move(arr);
    return out;
}

json selfmap_to_json(const SelfMap& f) {
    json arr = json::array();
    for (int i = 0; i < f.image.size(); ++i) {
        json entry;
        entry["from"] = f.image.point_at(i);
        entry["to"] = f.image.point_at(f.assignment[i]);
        arr.push_back(std::move(entry));
    }
    return arr;
}

json stats_to_json(const SearchStats& st) {
    json out;
    out["nodes"] = st.nodes;
    out["seeds_tried"] = st.seeds_tried;
    out["arc_removed"] = st.arc_removed;
    out["distance_removed"] = st.distance_removed;
    out["geodesic_fixed"] = st.geodesic_fixed;
    out["pulling_removed"] = st.pulling_removed;
    out["interior_fixed"] = st.interior_fixed;
    return out;
}

} // namespace freeze
