#include "qsm/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qsm {
namespace {

constexpr double kPi = 3.14159265358979323846;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot_d(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// splitmix64: tiny, stable across platforms, plenty for sample points.
std::uint64_t next_u64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double next_unit_open(std::uint64_t& state) {
  // 53 random bits into (0, 1]; never 0, so log is safe.
  return (static_cast<double>(next_u64(state) >> 11) + 1.0) * 0x1.0p-53;
}

double next_normal(std::uint64_t& state) {
  const double u1 = next_unit_open(state);
  const double u2 = next_unit_open(state);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

/// Orthonormal tangent frame at a unit point: the last m columns of the
/// Householder reflection exchanging p with an axis vector.
std::vector<std::vector<double>> tangent_frame(const std::vector<double>& p) {
  const std::size_t d = p.size();
  const double s = p[0] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v = p;
  v[0] += s;
  const double vv = dot_d(v, v);
  std::vector<std::vector<double>> frame;
  frame.reserve(d - 1);
  for (std::size_t a = 1; a < d; ++a) {
    std::vector<double> e(d, 0.0);
    e[a] = 1.0;
    const double c = 2.0 * v[a] / vv;
    for (std::size_t i = 0; i < d; ++i) e[i] -= c * v[i];
    frame.push_back(std::move(e));
  }
  return frame;
}

std::vector<double> geodesic_point(const std::vector<double>& p, const std::vector<double>& e, double t) {
  std::vector<double> x(p.size());
  const double c = std::cos(t);
  const double s = std::sin(t);
  for (std::size_t i = 0; i < p.size(); ++i) x[i] = c * p[i] + s * e[i];
  return x;
}

void check_on_sphere(const std::vector<double>& p) {
  if (std::fabs(norm(p) - 1.0) > 1e-12) fail(Errc::not_on_sphere, "sample point is not on the unit sphere");
}

double rel_err(const std::vector<double>& got, const std::vector<double>& want) {
  double diff = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) diff += (got[i] - want[i]) * (got[i] - want[i]);
  return std::sqrt(diff) / std::max(1.0, norm(want));
}

/// Runs body at each sample point, reduces to the max error; the reduction
/// is order-independent so serial and parallel sweeps agree.
template <class PerPoint>
OracleCheck sweep(const std::string& name, const QuadMap<double>& map, const SamplePlan& plan, double tolerance, Exec exec, PerPoint&& per_point) {
  validate_plan(plan);
  auto points = sample_unit_points(map.m() + 1, plan.count, plan.seed);
  std::vector<double> errs(points.size(), 0.0);
  parallel_for(static_cast<long>(points.size()), exec, [&](long i) { errs[static_cast<std::size_t>(i)] = per_point(points[static_cast<std::size_t>(i)]); });
  OracleCheck check{name, plan.count, 0.0, tolerance, false};
  for (double e : errs) check.max_rel_err = std::max(check.max_rel_err, e);
  check.pass = check.max_rel_err <= tolerance;
  return check;
}

}  // namespace

void validate_plan(const SamplePlan& plan) {
  if (plan.count < 1) fail(Errc::bad_plan, "sample count must be at least 1");
  if (!(plan.step > 0.0) || plan.step >= 1e-2) fail(Errc::bad_plan, "step must lie in (0, 1e-2)");
  if (!(plan.tolerance > 0.0)) fail(Errc::bad_plan, "tolerance must be positive");
}

std::vector<std::vector<double>> sample_unit_points(int dim, int count, std::uint64_t seed) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (auto& x : p) x = next_normal(state);
    const double len = norm(p);
    if (len < 1e-6) continue;
    for (auto& x : p) x /= len;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> fd_second_derivative_trace(const QuadMap<double>& map, const std::vector<double>& p, const SamplePlan& plan) {
  validate_plan(plan);
  check_on_sphere(p);
  const double h = plan.step;
  const std::vector<double> fp = map.eval(p);
  std::vector<double> total(fp.size(), 0.0);
  for (const auto& e : tangent_frame(p)) {
    const std::vector<double> plus = map.eval(geodesic_point(p, e, h));
    const std::vector<double> minus = map.eval(geodesic_point(p, e, -h));
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += (plus[i] - 2.0 * fp[i] + minus[i]) / (h * h);
  }
  return total;
}

std::vector<double> fd_tension(const QuadMap<double>& map, const std::vector<double>& p, const SamplePlan& plan) {
  std::vector<double> t = fd_second_derivative_trace(map, p, plan);
  const std::vector<double> fp = map.eval(p);
  const double along = dot_d(t, fp);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] -= along * fp[i];
  return t;
}

std::vector<double> symbolic_tension_at(const QuadMap<double>& map, const std::vector<double>& p) {
  const std::vector<double> fp = map.eval(p);
  double psp = 0.0;
  for (int i = 0; i <= map.m(); ++i)
    for (int j = 0; j <= map.m(); ++j) psp += p[static_cast<std::size_t>(i)] * map.s_matrix()(i, j) * p[static_cast<std::size_t>(j)];
  const double w = 4.0 * psp - 2.0 * (map.m() + 3);
  std::vector<double> out(fp.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -map.laplacian()[i] + w * fp[i];
  return out;
}

OracleCheck tension_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec) {
  return sweep("tension", map, plan, plan.tolerance, exec,
               [&](const std::vector<double>& p) { return rel_err(fd_tension(map, p, plan), symbolic_tension_at(map, p)); });
}

OracleCheck energy_spot_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec) {
  return sweep("energy", map, plan, plan.tolerance, exec, [&](const std::vector<double>& p) {
    const double h = plan.step;
    double gram = 0.0;
    for (const auto& e : tangent_frame(p)) {
      const std::vector<double> plus = map.eval(geodesic_point(p, e, h));
      const std::vector<double> minus = map.eval(geodesic_point(p, e, -h));
      for (std::size_t i = 0; i < plus.size(); ++i) {
        const double d = (plus[i] - minus[i]) / (2.0 * h);
        gram += d * d;
      }
    }
    double psp = 0.0;
    for (int i = 0; i <= map.m(); ++i)
      for (int j = 0; j <= map.m(); ++j) psp += p[static_cast<std::size_t>(i)] * map.s_matrix()(i, j) * p[static_cast<std::size_t>(j)];
    const double expected = 4.0 * psp - 4.0;
    return std::fabs(gram - expected) / std::max(1.0, std::fabs(expected));
  });
}

OracleCheck tangency_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec) {
  return sweep("tangency", map, plan, plan.tolerance, exec, [&](const std::vector<double>& p) {
    const std::vector<double> t = fd_second_derivative_trace(map, p, plan);
    const std::vector<double> fp = map.eval(p);
    double psp = 0.0;
    for (int i = 0; i <= map.m(); ++i)
      for (int j = 0; j <= map.m(); ++j) psp += p[static_cast<std::size_t>(i)] * map.s_matrix()(i, j) * p[static_cast<std::size_t>(j)];
    const double expected = -(4.0 * psp - 4.0);
    const double got = dot_d(t, fp);
    return std::fabs(got - expected) / std::max(1.0, std::fabs(expected));
  });
}

OracleCheck bitension_spot_check(const QuadMap<double>& map, const SamplePlan& plan, Exec exec) {
  const double poly_tol = 1e-9;
  const PolyVec<double> bt = map.homogenized_bitension(exec);
  const auto closed = map.scalar_s_bitension_coefficients();
  const int d = map.m() + 1;

  return sweep("bitension", map, plan, poly_tol, Exec::serial, [&](const std::vector<double>& p) {
    const std::vector<double> from_poly = polyvec_eval(bt, p);

    // Independent path: matrix arithmetic of the same degree-6 expression
    // at |p| = 1.
    double psp = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) psp += p[static_cast<std::size_t>(i)] * map.s_matrix()(i, j) * p[static_cast<std::size_t>(j)];
    const std::vector<double> fp = map.eval(p);
    const double f_weight = 4.0 * ((map.m() + 3.0) * (map.m() + 5.0) - 6.0 * (map.m() + 5.0) * psp + 8.0 * psp * psp);
    std::vector<double> direct(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k) {
      const Matrix<double>& a = map.matrices()[k];
      double pasp = 0.0;
      for (int i = 0; i < d; ++i) {
        double row = 0.0;
        for (int j = 0; j < d; ++j) row += map.s_matrix()(i, j) * p[static_cast<std::size_t>(j)];
        double arow = 0.0;
        for (int j = 0; j < d; ++j) arow += a(i, j) * p[static_cast<std::size_t>(j)];
        pasp += arow * row;
      }
      direct[k] = -4.0 * (map.m() + 5.0 - 4.0 * psp) * a.trace() + f_weight * fp[k] + 32.0 * pasp;
    }
    double err = rel_err(from_poly, direct);

    if (closed) {
      std::vector<double> cf(fp.size());
      for (std::size_t k = 0; k < fp.size(); ++k) cf[k] = closed->first * map.laplacian()[k] + closed->second * fp[k];
      err = std::max(err, rel_err(from_poly, cf));
    }
    return err;
  });
}

OracleReport run_oracle(const QuadMap<double>& map, const SamplePlan& plan, Exec exec) {
  OracleReport report;
  report.checks.push_back(tension_check(map, plan, exec));
  report.checks.push_back(energy_spot_check(map, plan, exec));
  report.checks.push_back(tangency_check(map, plan, exec));
  report.checks.push_back(bitension_spot_check(map, plan, exec));
  report.pass = true;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

double tension_defect_at_step(const QuadMap<double>& map, const SamplePlan& plan, double step) {
  SamplePlan at = plan;
  at.step = step;
  validate_plan(at);
  auto points = sample_unit_points(map.m() + 1, at.count, at.seed);
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, rel_err(fd_tension(map, p, at), symbolic_tension_at(map, p)));
  return worst;
}

}  // namespace qsm
