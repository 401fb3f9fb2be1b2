#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jd {

enum class Errc {
  invalid_argument,
  degree_too_small,
  zero_scale,
  invalid_dipole,
  dipole_collides_with_center,
  duplicate_pole_zero,
  no_valid_radius,
  inside_disk,
  empty_shape,
  center_point,
  fixed_point_seed,
  degenerate_grid,
  no_convergence,
  empty_cloud,
  infinite_point,
  disjointness_violation,
  unsupported_format,
  parse_error,
  io_failure,
};

std::string_view to_string(Errc code) noexcept;

/// Broad class of a failure; the CLI maps these onto exit codes.
enum class ErrorClass { usage, validation, numeric };

ErrorClass classify(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace jd
