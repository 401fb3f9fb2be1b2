#include "jd/io.hpp"

#include <png.h>

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jd/error.hpp"

namespace jd {

using nlohmann::json;

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return {buf, end};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_failure, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::io_failure, "write failed: " + path);
}

namespace {

double parse_real(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(Errc::parse_error, where + ": not a finite number: '" + std::string(s) + "'");
  return v;
}

cplx json_complex(const json& j, const char* field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(Errc::parse_error, std::string(field) + " must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::vector<cplx> read_points_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<cplx> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (lineno == 1 && line.rfind("re,im", 0) == 0) continue;
    const auto c1 = line.find(',');
    if (c1 == std::string::npos)
      throw Error(Errc::parse_error, path + ":" + std::to_string(lineno) + ": expected re,im");
    const auto c2 = line.find(',', c1 + 1);
    const std::string where = path + ":" + std::to_string(lineno);
    const double re = parse_real(std::string_view(line).substr(0, c1), where);
    const double im = parse_real(
        std::string_view(line).substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1),
        where);
    out.emplace_back(re, im);
  }
  return out;
}

std::string points_csv(std::span<const cplx> points) {
  std::string s = "re,im\n";
  for (cplx z : points) {
    s += format_real(z.real());
    s += ',';
    s += format_real(z.imag());
    s += '\n';
  }
  return s;
}

void write_points_csv(const std::string& path, std::span<const cplx> points) {
  write_text(path, points_csv(points));
}

void write_limit_csv(const std::string& path, const LimitSet& set) {
  std::string s = "re,im,layer\n";
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    s += format_real(set.points[i].real()) + ',' + format_real(set.points[i].imag()) + ',' +
         std::to_string(set.layer[i]) + '\n';
  }
  write_text(path, s);
}

json map_to_json(const DipoleMap& map) {
  json j;
  j["base"] = {{"N", map.base().degree()},
               {"C", complex_json(map.base().scale())},
               {"p", complex_json(map.base().center())}};
  json ds = json::array();
  for (const auto& d : map.dipoles())
    ds.push_back({{"c", complex_json(d.center)}, {"eps", d.eps}, {"theta", d.theta}});
  j["dipoles"] = std::move(ds);
  return j;
}

DipoleMap map_from_json(const json& j) {
  try {
    const json& b = j.at("base");
    const int n = b.at("N").get<int>();
    const cplx c = b.contains("C") ? json_complex(b["C"], "C") : cplx(1.0);
    const cplx p = b.contains("p") ? json_complex(b["p"], "p") : cplx(0.0);
    std::vector<Dipole> dipoles;
    if (j.contains("dipoles")) {
      for (const json& d : j["dipoles"]) {
        Dipole dp;
        dp.center = json_complex(d.at("c"), "c");
        dp.eps = d.at("eps").get<double>();
        dp.theta = d.value("theta", 0.0);
        dipoles.push_back(dp);
      }
    }
    return build_map(make_base(n, c, p), std::move(dipoles));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("map spec: ") + e.what());
  }
}

DipoleMap read_map(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
  return map_from_json(j);
}

void write_map(const std::string& path, const DipoleMap& map) {
  write_text(path, map_to_json(map).dump(2) + "\n");
}

json report_to_json(const HausdorffReport& r) {
  auto pt = [](const SpherePoint& s) -> json {
    if (s.at_infinity()) return "inf";
    return complex_json(s.value());
  };
  return {{"flavor", to_string(r.flavor)},
          {"d_AB", r.d_ab},
          {"d_BA", r.d_ba},
          {"d_sym", r.d_sym},
          {"witness_AB", {pt(r.witness_ab_from), pt(r.witness_ab_to)}},
          {"witness_BA", {pt(r.witness_ba_from), pt(r.witness_ba_to)}}};
}

// ---------------------------------------------------------------------------
// Images

namespace {

GrayImage read_pgm(const std::string& data, const std::string& path) {
  std::size_t pos = 2;
  auto next_token = [&]() -> long {
    for (;;) {
      while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
      if (pos < data.size() && data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t begin = pos;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) ++pos;
    if (begin == pos) throw Error(Errc::parse_error, path + ": malformed PGM header");
    return std::stol(data.substr(begin, pos - begin));
  };
  const bool binary = data[1] == '5';
  GrayImage img;
  img.width = static_cast<int>(next_token());
  img.height = static_cast<int>(next_token());
  img.maxval = static_cast<int>(next_token());
  if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 || img.maxval > 65535)
    throw Error(Errc::parse_error, path + ": bad PGM dimensions");
  const auto n = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(n);
  if (binary) {
    ++pos;  // single whitespace after maxval
    const std::size_t bpp = img.maxval > 255 ? 2 : 1;
    if (data.size() < pos + n * bpp) throw Error(Errc::parse_error, path + ": truncated PGM");
    for (std::size_t i = 0; i < n; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos + i * bpp);
      img.pixels[i] = bpp == 2 ? static_cast<std::uint16_t>(p[0] << 8 | p[1]) : p[0];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<std::uint16_t>(next_token());
  }
  return img;
}

GrayImage read_png(const std::string& data, const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size()))
    throw Error(Errc::parse_error, path + ": " + image.message);
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(Errc::parse_error, path + ": " + image.message);
  }
  GrayImage img;
  img.width = static_cast<int>(image.width);
  img.height = static_cast<int>(image.height);
  img.maxval = 255;
  img.pixels.assign(buf.begin(), buf.end());
  return img;
}

}  // namespace

GrayImage read_gray_image(const std::string& path) {
  const std::string data = read_text(path);
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '2' || data[1] == '5'))
    return read_pgm(data, path);
  static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (data.size() >= 8 && std::memcmp(data.data(), kPngMagic, 8) == 0) return read_png(data, path);
  throw Error(Errc::unsupported_format, path + ": expected PGM (P2/P5) or PNG");
}

void write_png_gray(const std::string& path, int width, int height,
                    const std::vector<std::uint8_t>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr))
    throw Error(Errc::io_failure, path + ": " + image.message);
}

}  // namespace jd
