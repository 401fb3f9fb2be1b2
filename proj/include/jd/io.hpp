#pragma once

// File formats: point CSVs, map-spec JSON, grayscale images.

#include <cstdint>
#include <string>
#include <vector>

#include "jd/complex.hpp"
#include "jd/ingest.hpp"
#include "jd/limit.hpp"
#include "jd/metric.hpp"
#include "jd/rmap.hpp"
#include "json.hpp"

namespace jd {

/// Shortest decimal text that round-trips the double.
std::string format_real(double v);

/// Reads a "re,im[,...]" CSV; extra columns are ignored. Throws io_failure,
/// parse_error.
std::vector<cplx> read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, std::span<const cplx> points);
std::string points_csv(std::span<const cplx> points);

/// "re,im,layer"
void write_limit_csv(const std::string& path, const LimitSet& set);

nlohmann::json map_to_json(const DipoleMap& map);
/// Throws parse_error and the map-construction errors.
DipoleMap map_from_json(const nlohmann::json& j);
DipoleMap read_map(const std::string& path);
void write_map(const std::string& path, const DipoleMap& map);

nlohmann::json report_to_json(const HausdorffReport& r);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;
};

/// PGM (P2/P5) or PNG, chosen by magic bytes. Colour PNGs are reduced to
/// luminance. Throws unsupported_format, parse_error, io_failure.
GrayImage read_gray_image(const std::string& path);

void write_png_gray(const std::string& path, int width, int height,
                    const std::vector<std::uint8_t>& pixels);

}  // namespace jd
