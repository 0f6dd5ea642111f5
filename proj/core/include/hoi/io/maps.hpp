#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "hoi/correspondence/feature_map.hpp"
#include "hoi/render/image.hpp"

namespace hoi {

/// Binary scalar-map layout (little-endian):
///   char[4] magic ("DMAP" or "SMAP"), u32 version (= 1), u32 width, u32 height,
///   width * height f32 values, row-major.
/// Feature-map layout:
///   char[4] "FMAP", u32 version, u32 width, u32 height, u32 channels,
///   width * height * channels f32 values, row-major then channel.
inline constexpr std::uint32_t kMapFormatVersion = 1;

enum class MapKind { Depth, Silhouette };

void write_scalar_map(const std::filesystem::path& path, const Image<double>& image, MapKind kind);
/// Throws FormatError on a wrong magic, version or size.
Image<double> read_scalar_map(const std::filesystem::path& path, MapKind kind);

/// Binary PGM (P5, maxval 255). Values are written as round(255 * clamp(v, 0, 1)).
void write_pgm(const std::filesystem::path& path, const Image<double>& image);
/// Values mapped to [0, 1] by v / maxval.
Image<double> read_pgm(const std::filesystem::path& path);

/// Loads a mask from either a PGM (P5) or an SMAP file, chosen by file content.
Image<double> read_mask(const std::filesystem::path& path);

/// Writes the FMAP file and, when given, the validity mask as a PGM.
void write_feature_map(const std::filesystem::path& path, const FeatureMap& map,
                       const std::optional<std::filesystem::path>& validity_pgm = std::nullopt);
/// Without a validity file every pixel is valid.
FeatureMap read_feature_map(const std::filesystem::path& path,
                            const std::optional<std::filesystem::path>& validity_pgm = std::nullopt);

}  // namespace hoi
