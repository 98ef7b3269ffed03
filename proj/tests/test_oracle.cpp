#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>

#include "fixtures.hpp"
#include "qsm/oracle.hpp"

using namespace qsm;
using qsm::testing::catalog_map;
using qsm::testing::mixed_energy_map;

namespace {

std::optional<Errc> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

QuadMap<double> dmap(const char* name) { return map_to_double(catalog_map(name)); }

}  // namespace

TEST_CASE("plan validation") {
  CHECK(!code_of([] { validate_plan(SamplePlan{}); }).has_value());
  CHECK(code_of([] { validate_plan(SamplePlan{0, 0, 1e-4, 1e-5}); }) == Errc::bad_plan);
  CHECK(code_of([] { validate_plan(SamplePlan{10, 0, 0.0, 1e-5}); }) == Errc::bad_plan);
  CHECK(code_of([] { validate_plan(SamplePlan{10, 0, 1e-2, 1e-5}); }) == Errc::bad_plan);
  CHECK(code_of([] { validate_plan(SamplePlan{10, 0, -1e-4, 1e-5}); }) == Errc::bad_plan);
  CHECK(code_of([] { validate_plan(SamplePlan{10, 0, 1e-4, 0.0}); }) == Errc::bad_plan);
}

TEST_CASE("sample points are deterministic unit vectors") {
  auto pts = sample_unit_points(4, 20, 123);
  auto again = sample_unit_points(4, 20, 123);
  REQUIRE(pts.size() == 20);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double norm = 0.0;
    for (double c : pts[i]) norm += c * c;
    CHECK(std::abs(norm - 1.0) < 1e-12);
    CHECK(pts[i] == again[i]);
  }
  auto other = sample_unit_points(4, 20, 124);
  CHECK(pts[0] != other[0]);
}

TEST_CASE("finite differences require on-sphere points") {
  auto map = dmap("hopf");
  SamplePlan plan;
  std::vector<double> off{1.0, 0.5, 0.0, 0.0};
  CHECK(code_of([&] { fd_tension(map, off, plan); }) == Errc::not_on_sphere);
}

TEST_CASE("tension of harmonic maps vanishes numerically") {
  SamplePlan plan;
  for (const char* name : {"hopf", "veronese", "phi6"}) {
    auto map = dmap(name);
    auto check = tension_check(map, plan);
    CAPTURE(name);
    CHECK(check.pass);
    CHECK(check.max_rel_err < plan.tolerance);
    CHECK(check.samples == plan.count);
    for (const auto& p : sample_unit_points(map.m() + 1, 5, 7)) {
      auto t = fd_tension(map, p, plan);
      for (double c : t) CHECK(std::abs(c) < 1e-5);
    }
  }
}

TEST_CASE("tension matches the closed form on non-harmonic maps") {
  SamplePlan plan;
  for (const char* name : {"f_lambda:0", "f_lambda:1/2", "lift:hopf"}) {
    CAPTURE(name);
    CHECK(tension_check(dmap(name), plan).pass);
  }
  CHECK(tension_check(map_to_double(mixed_energy_map()), plan).pass);
  CHECK(tension_check(make_f_lambda_float(0.3), plan).pass);

  // Explicit spot value at the first coordinate vector.
  auto f12 = dmap("f_lambda:1/2");
  std::vector<double> e1(8, 0.0);
  e1[0] = 1.0;
  auto fd = fd_tension(f12, e1, plan);
  auto sym = symbolic_tension_at(f12, e1);
  REQUIRE(fd.size() == sym.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    CHECK(std::abs(fd[k] - sym[k]) < 1e-5 * std::max(1.0, std::abs(sym[k])));
  }
}

TEST_CASE("energy spot check") {
  SamplePlan plan;
  // Constant energy: |dphi|^2 = 4(alpha - 1) = 8 for the hopf map.
  auto hopf = dmap("hopf");
  auto check = energy_spot_check(hopf, plan);
  CHECK(check.pass);
  auto pts = sample_unit_points(4, 3, 99);
  auto s = hopf.s_matrix();
  for (const auto& p : pts) {
    double psp = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) psp += p[i] * s(i, j) * p[j];
    CHECK(std::abs(4.0 * psp - 4.0 - 8.0) < 1e-9);
  }
  // Non-constant energy still agrees pointwise with 4 p^t S p - 4.
  CHECK(energy_spot_check(map_to_double(mixed_energy_map()), plan).pass);
  // lambda = 0.3 has constant energy 4(1 - 0.3) = 2.8.
  CHECK(energy_spot_check(make_f_lambda_float(0.3), plan).pass);
}

TEST_CASE("tangency of the second derivative trace") {
  SamplePlan plan;
  for (const char* name : {"hopf", "f_lambda:0", "f_lambda:1/2"}) {
    CAPTURE(name);
    CHECK(tangency_check(dmap(name), plan).pass);
  }
  CHECK(tangency_check(map_to_double(mixed_energy_map()), plan).pass);
}

TEST_CASE("bitension polynomial agrees with independent evaluation") {
  SamplePlan plan;
  for (const char* name : {"hopf", "f_lambda:0", "f_lambda:1/2", "lift:veronese"}) {
    auto check = bitension_spot_check(dmap(name), plan);
    CAPTURE(name);
    CHECK(check.pass);
    CHECK(check.max_rel_err < 1e-9);
  }
  CHECK(bitension_spot_check(map_to_double(mixed_energy_map()), plan).pass);
}

TEST_CASE("full oracle run") {
  SamplePlan plan;
  auto report = run_oracle(dmap("f_lambda:0"), plan);
  CHECK(report.pass);
  REQUIRE(report.checks.size() == 4);
  for (const auto& c : report.checks) {
    CHECK(c.pass);
    CHECK(c.samples == plan.count);
  }
  // Serial and parallel execution produce identical maxima.
  auto serial = run_oracle(dmap("f_lambda:0"), plan, Exec::serial);
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    CHECK(report.checks[i].max_rel_err == serial.checks[i].max_rel_err);
  }
}

TEST_CASE("oracle rejects imprecise sampling") {
  SamplePlan coarse;
  coarse.step = 9e-3;
  auto check = tension_check(dmap("f_lambda:0"), coarse);
  CHECK(!check.pass);  // truncation error far above tolerance
}

TEST_CASE("oracle flags corrupted maps admitted under a loose tolerance") {
  auto mats = dmap("hopf").matrices();
  mats[0](0, 0) += 1e-3;
  auto corrupted = QuadMap<double>::validated(std::move(mats), 1e-2);
  auto report = run_oracle(corrupted, SamplePlan{});
  CHECK(!report.pass);
  bool some_failed = false;
  for (const auto& c : report.checks) some_failed = some_failed || !c.pass;
  CHECK(some_failed);
}

TEST_CASE("second differences converge at second order") {
  SamplePlan plan;
  plan.count = 30;
  for (const char* name : {"f_lambda:0", "f_lambda:1/2"}) {
    auto map = dmap(name);
    double coarse = tension_defect_at_step(map, plan, 4e-3);
    double fine = tension_defect_at_step(map, plan, 2e-3);
    CAPTURE(name);
    CHECK(fine > 0.0);
    double ratio = coarse / fine;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}
