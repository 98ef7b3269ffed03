#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <vector>

#include "qsm/errors.hpp"
#include "qsm/parallel.hpp"

using namespace qsm;

TEST_CASE("max_threads is positive") { CHECK(max_threads() >= 1); }

TEST_CASE("parallel_for visits every index exactly once") {
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), exec, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("parallel_for with zero iterations is a no-op") {
  bool touched = false;
  parallel_for(0, Exec::parallel, [&](std::size_t) { touched = true; });
  CHECK(!touched);
}

TEST_CASE("exceptions propagate out of parallel loops") {
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    CHECK_THROWS_AS(
        parallel_for(64, exec, [&](std::size_t i) {
          if (i == 17) fail(Errc::condition_violated, "planted failure");
        }),
        Error);
    try {
      parallel_for(64, exec, [&](std::size_t i) {
        if (i == 17) fail(Errc::condition_violated, "planted failure");
      });
    } catch (const Error& e) {
      CHECK(e.code() == Errc::condition_violated);
    }
  }
}

TEST_CASE("nested parallel loops fall back to serial and still cover all work") {
  std::vector<std::atomic<int>> hits(64);
  parallel_for(8, Exec::parallel, [&](std::size_t outer) {
    parallel_for(8, Exec::parallel, [&](std::size_t inner) { hits[outer * 8 + inner].fetch_add(1); });
  });
  for (const auto& h : hits) CHECK(h.load() == 1);
}
