#ifndef QSM_ERRORS_HPP
#define QSM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsm {

enum class Errc {
  division_by_zero,
  negative_input,
  parse_error,
  degree_mismatch,
  dimension_mismatch,
  not_symmetric,
  not_spherical,
  constant_map,
  not_orthogonal,
  not_positive_definite,
  condition_violated,
  path_disagreement,
  not_proper_biharmonic,
  exact_rotation_unavailable,
  radius_below_bound,
  not_in_claimed_sphere,
  inner_not_harmonic,
  inner_energy_not_constant,
  unknown_name,
  lambda_out_of_range,
  inexact_lambda,
  not_on_sphere,
  bad_plan,
};

/// Library-wide exception; `code()` identifies the failure class so callers
/// (in particular the CLI exit-code mapping) can dispatch without string
/// matching.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace qsm

#endif
