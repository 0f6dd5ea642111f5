#include "hoi/io/maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hoi/error.hpp"

namespace hoi {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary map I/O assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw FormatError("truncated header in " + path.string());
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

const char* magic_for(MapKind kind) { return kind == MapKind::Depth ? "DMAP" : "SMAP"; }

void check_magic(std::istream& in, const char* expected, const std::filesystem::path& path) {
  char magic[4] = {};
  if (!in.read(magic, 4) || std::memcmp(magic, expected, 4) != 0) {
    throw FormatError(path.string() + ": expected magic " + std::string(expected, 4));
  }
  const std::uint32_t version = get_u32(in, path);
  if (version != kMapFormatVersion) {
    throw FormatError(path.string() + ": unsupported version " + std::to_string(version));
  }
}

void expect_eof(std::istream& in, const std::filesystem::path& path) {
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(path.string() + ": trailing bytes after payload");
  }
}

}  // namespace

void write_scalar_map(const std::filesystem::path& path, const Image<double>& image, MapKind kind) {
  auto out = open_out(path);
  out.write(magic_for(kind), 4);
  put_u32(out, kMapFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(image.width()));
  put_u32(out, static_cast<std::uint32_t>(image.height()));
  std::vector<float> buf(image.size());
  std::transform(image.data().begin(), image.data().end(), buf.begin(),
                 [](double v) { return static_cast<float>(v); });
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
}

Image<double> read_scalar_map(const std::filesystem::path& path, MapKind kind) {
  auto in = open_in(path);
  check_magic(in, magic_for(kind), path);
  const auto w = get_u32(in, path);
  const auto h = get_u32(in, path);
  if (w == 0 || h == 0 || w > 1u << 15 || h > 1u << 15) {
    throw FormatError(path.string() + ": implausible dimensions");
  }
  std::vector<float> buf(static_cast<std::size_t>(w) * h);
  if (!in.read(reinterpret_cast<char*>(buf.data()),
               static_cast<std::streamsize>(buf.size() * sizeof(float)))) {
    throw FormatError(path.string() + ": truncated payload");
  }
  expect_eof(in, path);
  Image<double> img(static_cast<int>(w), static_cast<int>(h));
  std::copy(buf.begin(), buf.end(), img.data().begin());
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image<double>& image) {
  auto out = open_out(path);
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<unsigned char> buf(image.size());
  std::transform(image.data().begin(), image.data().end(), buf.begin(), [](double v) {
    return static_cast<unsigned char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
  });
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

Image<double> read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw FormatError(path.string() + ": not a binary PGM (P5)");
  auto next_int = [&]() {
    // Skip whitespace and comments.
    while (true) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string skip;
        std::getline(in, skip);
      } else {
        break;
      }
    }
    long v = -1;
    if (!(in >> v)) throw FormatError(path.string() + ": malformed PGM header");
    return v;
  };
  const long w = next_int();
  const long h = next_int();
  const long maxval = next_int();
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw FormatError(path.string() + ": unsupported PGM dimensions or maxval");
  }
  in.get();  // single whitespace before raster
  std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
  if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
    throw FormatError(path.string() + ": truncated PGM raster");
  }
  Image<double> img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t i = 0; i < buf.size(); ++i) img[i] = buf[i] / static_cast<double>(maxval);
  return img;
}

Image<double> read_mask(const std::filesystem::path& path) {
  char head[4] = {};
  {
    auto in = open_in(path);
    in.read(head, 4);
  }
  if (std::memcmp(head, "SMAP", 4) == 0) return read_scalar_map(path, MapKind::Silhouette);
  if (head[0] == 'P' && head[1] == '5') return read_pgm(path);
  throw FormatError(path.string() + ": mask must be PGM (P5) or SMAP");
}

void write_feature_map(const std::filesystem::path& path, const FeatureMap& map,
                       const std::optional<std::filesystem::path>& validity_pgm) {
  auto out = open_out(path);
  out.write("FMAP", 4);
  put_u32(out, kMapFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(map.width()));
  put_u32(out, static_cast<std::uint32_t>(map.height()));
  put_u32(out, static_cast<std::uint32_t>(map.channels()));
  out.write(reinterpret_cast<const char*>(map.data().data()),
            static_cast<std::streamsize>(map.data().size() * sizeof(float)));
  if (validity_pgm) {
    Image<double> v(map.width(), map.height());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = map.valid_mask()[i] ? 1.0 : 0.0;
    write_pgm(*validity_pgm, v);
  }
}

FeatureMap read_feature_map(const std::filesystem::path& path,
                            const std::optional<std::filesystem::path>& validity_pgm) {
  auto in = open_in(path);
  check_magic(in, "FMAP", path);
  const auto w = get_u32(in, path);
  const auto h = get_u32(in, path);
  const auto c = get_u32(in, path);
  if (w == 0 || h == 0 || c == 0 || w > 1u << 15 || h > 1u << 15 || c > 1u << 14) {
    throw FormatError(path.string() + ": implausible feature map dimensions");
  }
  FeatureMap map(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c));
  if (!in.read(reinterpret_cast<char*>(map.data().data()),
               static_cast<std::streamsize>(map.data().size() * sizeof(float)))) {
    throw FormatError(path.string() + ": truncated feature payload");
  }
  expect_eof(in, path);
  if (validity_pgm) {
    const auto v = read_pgm(*validity_pgm);
    if (v.width() != map.width() || v.height() != map.height()) {
      throw FormatError(validity_pgm->string() + ": validity mask size mismatch");
    }
    map.set_valid_mask(threshold_mask(v, 0.5));
  }
  return map;
}

}  // namespace hoi
