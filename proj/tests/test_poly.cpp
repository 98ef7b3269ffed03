#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "qsm/errors.hpp"
#include "qsm/poly.hpp"
#include "qsm/surd.hpp"

using namespace qsm;

namespace {

Monomial mono(std::vector<std::uint8_t> exps) {
  Monomial m;
  m.exps = std::move(exps);
  return m;
}

std::uint64_t splitmix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HomoPoly<Surd> random_poly(int nvars, int degree, std::uint64_t& state) {
  HomoPoly<Surd> p(nvars, degree);
  for (int t = 0; t < 6; ++t) {
    std::vector<std::uint8_t> exps(static_cast<std::size_t>(nvars), 0);
    for (int d = 0; d < degree; ++d) exps[splitmix(state) % static_cast<std::uint64_t>(nvars)]++;
    p.add_term(mono(exps), Surd(rat(static_cast<long>(splitmix(state) % 11) - 5, static_cast<long>(1 + splitmix(state) % 4))));
  }
  return p;
}

}  // namespace

TEST_CASE("monomials multiply and order") {
  Monomial x1 = mono({1, 0});
  Monomial x2 = mono({0, 1});
  CHECK((x1 * x1) == mono({2, 0}));
  CHECK((x1 * x2).degree() == 2);
  CHECK(x1.str() == "x1");
  CHECK(mono({2, 1}).str() == "x1^2*x2");
  CHECK(mono({0, 0}).str() == "1");
  GrlexGreater gt;
  CHECK(gt(mono({2, 0}), mono({1, 1})));
  CHECK(gt(mono({1, 1}), mono({0, 2})));
  CHECK(gt(mono({3, 0}), mono({2, 0})));  // higher degree first
  CHECK(!gt(mono({2, 0}), mono({2, 0})));
}

TEST_CASE("single variable product") {
  HomoPoly<Surd> x1(2, 1);
  x1.add_term(mono({1, 0}), Surd(1));
  auto sq = mul(x1, x1, Exec::serial);
  CHECK(sq.degree() == 2);
  CHECK(sq.coeff(mono({2, 0})) == Surd(1));
  CHECK(sq.coeff(mono({1, 1})) == Surd());
  CHECK(sq.term_count() == 1);
}

TEST_CASE("radius polynomial square in two variables") {
  auto r2 = radius_sq_poly<Surd>(2);
  auto r4 = mul(r2, r2, Exec::serial);
  CHECK(r4.coeff(mono({4, 0})) == Surd(1));
  CHECK(r4.coeff(mono({2, 2})) == Surd(2));
  CHECK(r4.coeff(mono({0, 4})) == Surd(1));
  CHECK(r4.term_count() == 3);
}

TEST_CASE("quadratic form of scaled identity squared") {
  auto s = Matrix<Surd>::identity(2).scaled(Surd(2));
  auto q = quad_form(s, 0.0);
  auto q2 = mul(q, q, Exec::serial);
  auto r2 = radius_sq_poly<Surd>(2);
  auto four_r4 = mul(r2, r2, Exec::serial).scaled(Surd(4));
  CHECK(HomoPoly<Surd>::equal(q2, four_r4, 0.0));
}

TEST_CASE("quadratic form examples") {
  auto qid = quad_form(Matrix<Surd>::identity(2), 0.0);
  CHECK(qid.coeff(mono({2, 0})) == Surd(1));
  CHECK(qid.coeff(mono({0, 2})) == Surd(1));
  CHECK(qid.coeff(mono({1, 1})) == Surd());

  Matrix<Surd> d(2, 2);
  d(0, 0) = Surd(1);
  d(1, 1) = Surd(-1);
  auto qd = quad_form(d, 0.0);
  CHECK(qd.coeff(mono({2, 0})) == Surd(1));
  CHECK(qd.coeff(mono({0, 2})) == Surd(-1));

  Matrix<Surd> anti(2, 2);
  anti(0, 1) = Surd(1);
  anti(1, 0) = Surd(1);
  auto qa = quad_form(anti, 0.0);
  CHECK(qa.coeff(mono({1, 1})) == Surd(2));
  CHECK(qa.term_count() == 1);

  Matrix<Surd> asym(2, 2);
  asym(0, 1) = Surd(1);
  CHECK_THROWS_AS(quad_form(asym, 0.0), Error);
}

TEST_CASE("coefficient queries validate shape") {
  auto r2 = radius_sq_poly<Surd>(2);
  CHECK(r2.coeff(mono({2, 0})) == Surd(1));
  CHECK_THROWS_AS(r2.coeff(mono({1, 0})), Error);      // degree mismatch
  CHECK_THROWS_AS(r2.coeff(mono({1, 1, 0})), Error);   // variable count mismatch
  try {
    r2.coeff(mono({1, 0}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degree_mismatch);
  }
}

TEST_CASE("term validation on add") {
  HomoPoly<Surd> p(2, 2);
  CHECK_THROWS_AS(p.add_term(mono({1, 0}), Surd(1)), Error);
  CHECK_THROWS_AS(p.add_term(mono({1, 1, 0}), Surd(1)), Error);
  HomoPoly<Surd> q(2, 3);
  CHECK_THROWS_AS(p += q, Error);
}

TEST_CASE("cancellation removes stored terms") {
  HomoPoly<Surd> p(2, 2);
  p.add_term(mono({1, 1}), Surd::sqrt2());
  p.add_term(mono({2, 0}), Surd(3));
  auto q = p.scaled(Surd(-1));
  auto z = p + q;
  CHECK(z.term_count() == 0);
  CHECK(z.is_exactly_zero());
  p.add_term(mono({1, 1}), -Surd::sqrt2());
  CHECK(p.term_count() == 1);
  CHECK(p.coeff(mono({1, 1})) == Surd());
}

TEST_CASE("evaluation") {
  auto r2 = radius_sq_poly<Surd>(2);
  std::vector<Surd> p{Surd(rat(3, 5)), Surd(rat(4, 5))};
  CHECK(r2.eval(p) == Surd(1));
  HomoPoly<Surd> cube(1, 3);
  cube.add_term(mono({3}), Surd(2));
  CHECK(cube.eval({Surd(rat(1, 2))}) == Surd(rat(1, 4)));
}

TEST_CASE("homogeneity under scaling") {
  std::uint64_t state = 21;
  for (int trial = 0; trial < 25; ++trial) {
    int nvars = 2 + static_cast<int>(splitmix(state) % 3);
    int degree = 1 + static_cast<int>(splitmix(state) % 4);
    auto p = random_poly(nvars, degree, state);
    std::vector<Surd> x, tx;
    Surd t(rat(static_cast<long>(splitmix(state) % 7) - 3, static_cast<long>(1 + splitmix(state) % 3)));
    for (int i = 0; i < nvars; ++i) {
      x.push_back(Surd(rat(static_cast<long>(splitmix(state) % 9) - 4, static_cast<long>(1 + splitmix(state) % 3))));
      tx.push_back(t * x.back());
    }
    Surd scale(1);
    for (int d = 0; d < degree; ++d) scale = scale * t;
    CHECK(p.eval(tx) == scale * p.eval(x));
  }
}

TEST_CASE("ring laws on random polynomials") {
  std::uint64_t state = 77;
  for (int trial = 0; trial < 15; ++trial) {
    int nvars = 2 + static_cast<int>(splitmix(state) % 2);
    auto a = random_poly(nvars, 2, state);
    auto b = random_poly(nvars, 2, state);
    auto c = random_poly(nvars, 1, state);
    CHECK(HomoPoly<Surd>::equal(mul(a, b, Exec::serial), mul(b, a, Exec::serial), 0.0));
    auto left = mul(mul(a, b, Exec::serial), c, Exec::serial);
    auto right = mul(a, mul(b, c, Exec::serial), Exec::serial);
    CHECK(HomoPoly<Surd>::equal(left, right, 0.0));
    auto distributed = mul(a + b, c, Exec::serial);
    auto expanded = mul(a, c, Exec::serial) + mul(b, c, Exec::serial);
    CHECK(HomoPoly<Surd>::equal(distributed, expanded, 0.0));
  }
}

TEST_CASE("quadratic form matches matrix arithmetic") {
  std::uint64_t state = 3;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + splitmix(state) % 3;
    Matrix<Surd> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Surd v(rat(static_cast<long>(splitmix(state) % 9) - 4, static_cast<long>(1 + splitmix(state) % 3)));
        a(i, j) = v;
        a(j, i) = v;
      }
    std::vector<Surd> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Surd(rat(static_cast<long>(splitmix(state) % 9) - 4, static_cast<long>(1 + splitmix(state) % 3))));
    Surd direct;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) direct += x[i] * a(i, j) * x[j];
    CHECK(quad_form(a, 0.0).eval(x) == direct);
  }
}

TEST_CASE("parallel product equals serial product") {
  std::uint64_t state = 13;
  // Dense degree-4 polynomials in 6 variables: term counts push past the parallel threshold.
  HomoPoly<Surd> a(6, 4), b(6, 4);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint8_t> ea(6, 0), eb(6, 0);
    for (int d = 0; d < 4; ++d) {
      ea[splitmix(state) % 6]++;
      eb[splitmix(state) % 6]++;
    }
    a.add_term(mono(ea), Surd(rat(static_cast<long>(splitmix(state) % 11) - 5, 1)));
    b.add_term(mono(eb), Surd(rat(static_cast<long>(splitmix(state) % 11) - 5, 1)));
  }
  CHECK(static_cast<long>(a.term_count()) * static_cast<long>(b.term_count()) >= 4096);
  auto serial = mul_serial(a, b);
  auto parallel = mul(a, b, Exec::parallel);
  CHECK(HomoPoly<Surd>::equal(serial, parallel, 0.0));

  HomoPoly<double> ad(6, 4), bd(6, 4);
  for (const auto& [m, c] : a.terms()) ad.add_term(m, c.to_double());
  for (const auto& [m, c] : b.terms()) bd.add_term(m, c.to_double());
  auto sd = mul_serial(ad, bd);
  auto pd = mul(ad, bd, Exec::parallel);
  CHECK(HomoPoly<double>::equal(sd, pd, 0.0));
}

TEST_CASE("polynomial vectors") {
  auto r2 = radius_sq_poly<Surd>(2);
  PolyVec<Surd> v{r2, r2.scaled(Surd(2))};
  auto w = polyvec_scaled(v, Surd(rat(1, 2)));
  CHECK(HomoPoly<Surd>::equal(w[1], r2, 0.0));
  auto z = polyvec_sub(v, v);
  CHECK(polyvec_is_zero(z, 0.0));
  auto vals = polyvec_eval(v, {Surd(rat(3, 5)), Surd(rat(4, 5))});
  CHECK(vals[0] == Surd(1));
  CHECK(vals[1] == Surd(2));
  auto n = norm_sq(v, 2, Exec::serial);
  // |(r2, 2 r2)|^2 = 5 r2^2.
  auto expected = mul(r2, r2, Exec::serial).scaled(Surd(5));
  CHECK(HomoPoly<Surd>::equal(n, expected, 0.0));
}

TEST_CASE("string rendering") {
  HomoPoly<Surd> p(2, 2);
  p.add_term(mono({2, 0}), Surd(1));
  p.add_term(mono({1, 1}), Surd(-2));
  auto s = p.str();
  CHECK(s.find("x1^2") != std::string::npos);
  CHECK(s.find("x1*x2") != std::string::npos);
  CHECK(HomoPoly<Surd>(2, 2).str() == "0");
}
