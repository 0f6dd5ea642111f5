#include "hoi/geometry/obj_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "hoi/error.hpp"

namespace hoi {
namespace {

long parse_index(const std::string& token, std::size_t vertex_count, int line_no) {
  const std::string head = token.substr(0, token.find('/'));
  long idx = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
  if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0) {
    throw FormatError("OBJ line " + std::to_string(line_no) + ": bad face index '" + token + "'");
  }
  if (idx < 0) idx += static_cast<long>(vertex_count) + 1;
  if (idx < 1 || idx > static_cast<long>(vertex_count)) {
    throw FormatError("OBJ line " + std::to_string(line_no) + ": face index out of range");
  }
  return idx - 1;
}

}  // namespace

TriangleMesh read_obj(std::istream& in) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Eigen::Vector3d p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        throw FormatError("OBJ line " + std::to_string(line_no) + ": malformed vertex");
      }
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<std::uint32_t> poly;
      std::string token;
      while (ls >> token) {
        poly.push_back(static_cast<std::uint32_t>(parse_index(token, vertices.size(), line_no)));
      }
      if (poly.size() < 3) {
        throw FormatError("OBJ line " + std::to_string(line_no) + ": face with < 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        faces.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

TriangleMesh read_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open OBJ file " + path.string());
  return read_obj(in);
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Face& f : mesh.faces()) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write OBJ file " + path.string());
  write_obj(out, mesh);
}

}  // namespace hoi
