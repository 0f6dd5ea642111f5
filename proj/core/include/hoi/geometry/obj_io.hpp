#pragma once

#include <filesystem>
#include <iosfwd>

#include "hoi/geometry/mesh.hpp"

namespace hoi {

/// Reads `v x y z` and `f i j k ...` records (1-based or negative indices,
/// `i/t/n` forms accepted). Polygons are fan-triangulated; other records ignored.
TriangleMesh read_obj(std::istream& in);
TriangleMesh read_obj(const std::filesystem::path& path);

void write_obj(std::ostream& out, const TriangleMesh& mesh);
void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

}  // namespace hoi
