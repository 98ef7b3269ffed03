#ifndef QSM_ORACLE_HPP
#define QSM_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qsm/quadmap.hpp"

namespace qsm {

/// Sampling/differencing parameters for the numerical checks. The default
/// step balances O(h^2) truncation against the ~1e-8/h^2 cancellation noise
/// floor of second differences; the tolerance sits above both.
struct SamplePlan {
  int count = 50;
  std::uint64_t seed = 0;
  double step = 1e-4;
  double tolerance = 1e-5;
};

void validate_plan(const SamplePlan& plan);

/// Deterministic pseudo-random points on the unit sphere of the given
/// ambient dimension (Box-Muller from a hand-stepped generator, so the
/// sequence is identical on every platform).
std::vector<std::vector<double>> sample_unit_points(int dim, int count, std::uint64_t seed);

/// Numerical tension field at p: sum over an orthonormal tangent frame of
/// central second differences of the map along great-circle geodesics,
/// projected onto the tangent space of the codomain sphere at the image.
std::vector<double> fd_tension(const QuadMap<double>& map, const std::vector<double>& p, const SamplePlan& plan);

/// Same trace of geodesic second derivatives without the tangential
/// projection; its normal part carries -|dphi|^2 times the image vector.
std::vector<double> fd_second_derivative_trace(const QuadMap<double>& map, const std::vector<double>& p, const SamplePlan& plan);

/// Closed-form tension at a unit point: -laplacian + (4 p^t S p - 2(m+3)) F(p).
std::vector<double> symbolic_tension_at(const QuadMap<double>& map, const std::vector<double>& p);

struct OracleCheck {
  std::string name;
  int samples = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// fd_tension vs the closed form at `count` sample points.
OracleCheck tension_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec = Exec::parallel);

/// Frame-summed squared first differences vs the energy polynomial
/// 4 p^t S p - 4.
OracleCheck energy_spot_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec = Exec::parallel);

/// Normal component of the unprojected second-derivative trace vs
/// -(4 p^t S p - 4) along the image vector.
OracleCheck tangency_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec = Exec::parallel);

/// Degree-6 bitension polynomial evaluated at unit points vs an independent
/// matrix-arithmetic evaluation, and vs the scalar-S closed form when it
/// applies. Fixed tolerance 1e-9: both paths are exact up to rounding.
OracleCheck bitension_spot_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec = Exec::parallel);

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool pass = false;
};

OracleReport run_oracle(const QuadMap<double>& map, const SamplePlan& plan, Exec exec = Exec::parallel);

/// Maximum relative fd-vs-symbolic tension error over the plan's samples at
/// the given step; used to observe the O(h^2) convergence order.
double tension_defect_at_step(const QuadMap<double>& map, const SamplePlan& plan, double step);

}  // namespace qsm

#endif
