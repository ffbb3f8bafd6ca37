#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "freeze/construct.hpp"
#include "freeze/lattice.hpp"
#include "freeze/verify.hpp"

namespace freeze {

/// On-disk description of a digital image: dimension, adjacency, and either
/// an explicit point list or a cube list (with optional subtracted holes).
struct ImageDocument {
    int dim = 0;
    std::string adjacency; // "c1", "cN", or a decimal integer
    PointSet points;               // used when cubes is empty
    std::vector<CubeSpec> cubes;   // union, resolved before holes
    std::vector<CubeSpec> holes;   // subtracted after the union
    bool uses_cubes = false;

    int resolve_u(const std::optional<std::string>& override_adjacency = {}) const;
    DigitalImage build(const std::optional<std::string>& override_adjacency = {}) const;
};

ImageDocument image_document_from_json(const nlohmann::json& j);
ImageDocument load_image_document(const std::filesystem::path& file);

/// Point-set files accept {"points": [...]}, a bare array of points, or a
/// report object carrying a "set" or "minimal_set" field.
PointSet point_set_from_json(const nlohmann::json& j, int expected_dim);
PointSet load_point_set(const std::filesystem::path& file, int expected_dim);

CubeDecomposition decomposition_from_json(const nlohmann::json& j, int expected_dim);
CubeDecomposition load_decomposition(const std::filesystem::path& file, int expected_dim);

nlohmann::json point_set_to_json(const PointSet& pts, int dim);
nlohmann::json selfmap_to_json(const SelfMap& f);
nlohmann::json stats_to_json(const SearchStats& st);

/// Parses a JSON file, mapping parse failures to invalid_argument with
/// file/line context.
nlohmann::json load_json(const std::filesystem::path& file);

} // namespace freeze
