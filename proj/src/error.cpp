#include "jd/error.hpp"

#include "jd/complex.hpp"

namespace jd {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::degree_too_small: return "degree-too-small";
    case Errc::zero_scale: return "zero-scale";
    case Errc::invalid_dipole: return "invalid-dipole";
    case Errc::dipole_collides_with_center: return "dipole-collides-with-center";
    case Errc::duplicate_pole_zero: return "duplicate-pole-zero";
    case Errc::no_valid_radius: return "no-valid-radius";
    case Errc::inside_disk: return "inside-disk";
    case Errc::empty_shape: return "empty-shape";
    case Errc::center_point: return "center-point";
    case Errc::fixed_point_seed: return "fixed-point-seed";
    case Errc::degenerate_grid: return "degenerate-grid";
    case Errc::no_convergence: return "no-convergence";
    case Errc::empty_cloud: return "empty-cloud";
    case Errc::infinite_point: return "infinite-point";
    case Errc::disjointness_violation: return "disjointness-violation";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::parse_error: return "parse-error";
    case Errc::io_failure: return "io-failure";
  }
  return "unknown";
}

ErrorClass classify(Errc code) noexcept {
  switch (code) {
    case Errc::no_valid_radius:
    case Errc::degenerate_grid:
    case Errc::no_convergence:
      return ErrorClass::numeric;
    case Errc::invalid_argument:
      return ErrorClass::usage;
    default:
      return ErrorClass::validation;
  }
}

void Viewport::validate() const {
  if (!(re_max > re_min) || !(im_max > im_min) || !std::isfinite(width()) ||
      !std::isfinite(height()))
    throw Error(Errc::invalid_argument, "viewport must have positive width and height");
}

}  // namespace jd
