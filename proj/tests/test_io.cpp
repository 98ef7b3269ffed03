#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <optional>
#include <string>

#include "fixtures.hpp"
#include "qsm/mapfile.hpp"

using namespace qsm;
using qsm::testing::catalog_map;

namespace {

std::optional<Errc> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("scalar literals parse and emit canonically") {
  CHECK(surd_from_json(nlohmann::json("1/2")) == Surd(rat(1, 2)));
  CHECK(surd_from_json(nlohmann::json("-3")) == Surd(-3));
  CHECK(surd_from_json(nlohmann::json("0")) == Surd());
  CHECK(surd_to_json(Surd(rat(1, 2))) == nlohmann::json("1/2"));
  CHECK(surd_to_json(Surd(-3)) == nlohmann::json("-3"));
  CHECK(surd_to_json(Surd()) == nlohmann::json("0"));

  nlohmann::json obj{{"s2", "1/2"}};
  CHECK(surd_from_json(obj) == Surd::make(0, rat(1, 2), 0, 0));
  CHECK(surd_to_json(Surd::make(0, rat(1, 2), 0, 0)) == obj);

  nlohmann::json full{{"q", "1"}, {"s2", "-2/3"}, {"s3", "4"}, {"s6", "1/6"}};
  Surd v = surd_from_json(full);
  CHECK(v == Surd::make(1, rat(-2, 3), 4, rat(1, 6)));
  CHECK(surd_from_json(surd_to_json(v)) == v);

  // Canonical emission never includes zero keys.
  auto j = surd_to_json(Surd::make(0, 0, rat(5, 7), 0));
  REQUIRE(j.is_object());
  CHECK(j.size() == 1);
  CHECK(j.contains("s3"));
}

TEST_CASE("scalar literals reject malformed input") {
  CHECK(code_of([] { surd_from_json(nlohmann::json("1//2")); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json("1/0")); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json("")); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json("3/-2")); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json(0.5)); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json(3)); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json{{"sqrt2", "1"}}); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json{{"s2", 1}}); }) == Errc::parse_error);
  CHECK(code_of([] { surd_from_json(nlohmann::json::array({"1"})); }) == Errc::parse_error);
}

TEST_CASE("map files round-trip byte-identically for every catalog entry") {
  for (const auto& name : catalog_names()) {
    auto entry = catalog_get(name);
    MapMetadata meta;
    meta.name = entry.name;
    meta.description = entry.description;
    std::string first = emit_map_file(entry.map.matrices(), meta);
    auto parsed = parse_map_file(first);
    CHECK(parsed.m == entry.map.m());
    CHECK(parsed.n == entry.map.n());
    REQUIRE(parsed.metadata.name.has_value());
    CHECK(*parsed.metadata.name == entry.name);
    std::string second = emit_map_file(parsed.matrices, parsed.metadata);
    CAPTURE(name);
    CHECK(first == second);
    for (std::size_t k = 0; k < parsed.matrices.size(); ++k) {
      CHECK(Matrix<Surd>::equal(parsed.matrices[k], entry.map.matrices()[k], 0.0));
    }
  }
}

TEST_CASE("emitted files end with a newline and use two-space indent") {
  auto text = emit_map_file(catalog_map("complex_squaring").matrices());
  CHECK(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(text.find("  \"m\"") != std::string::npos);
}

TEST_CASE("map file structure is validated") {
  auto good = emit_map_file(catalog_map("complex_squaring").matrices());
  CHECK(parse_map_file(good).matrices.size() == 2);

  CHECK(code_of([] { parse_map_file("not json"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_map_file("[1,2]"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_map_file("{}"); }) == Errc::parse_error);

  // Field-by-field corruption of a known-good document.
  auto doc = nlohmann::json::parse(good);
  auto corrupt = [&](const std::function<void(nlohmann::json&)>& change) {
    auto copy = doc;
    change(copy);
    return code_of([&] { parse_map_file(copy.dump()); });
  };
  CHECK(corrupt([](nlohmann::json& j) { j.erase("m"); }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j.erase("matrices"); }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["m"] = 0; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["m"] = 1.5; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["m"] = "1"; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["extra"] = 1; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["matrices"].get_ref<nlohmann::json::array_t&>().pop_back(); }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["matrices"][0].get_ref<nlohmann::json::array_t&>().pop_back(); }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["matrices"][0][0].get_ref<nlohmann::json::array_t&>().pop_back(); }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["matrices"][0][0][0] = "1//2"; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["metadata"] = nlohmann::json{{"owner", "x"}}; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["metadata"] = nlohmann::json{{"name", 7}}; }) == Errc::parse_error);
  CHECK(corrupt([](nlohmann::json& j) { j["n"] = -1; }) == Errc::parse_error);
}

TEST_CASE("metadata is optional and preserved") {
  auto bare = emit_map_file(catalog_map("complex_squaring").matrices());
  auto parsed = parse_map_file(bare);
  CHECK(!parsed.metadata.name.has_value());
  CHECK(!parsed.metadata.description.has_value());

  MapMetadata meta;
  meta.description = "just a description";
  auto with_desc = emit_map_file(catalog_map("complex_squaring").matrices(), meta);
  auto back = parse_map_file(with_desc);
  CHECK(!back.metadata.name.has_value());
  REQUIRE(back.metadata.description.has_value());
  CHECK(*back.metadata.description == "just a description");
}

TEST_CASE("missing files raise a parse error") {
  CHECK(code_of([] { load_map_file("/nonexistent/definitely_missing.json"); }) == Errc::parse_error);
}

TEST_CASE("emitted matrices feed straight into map construction") {
  auto text = emit_map_file(catalog_map("phi6").matrices());
  auto parsed = parse_map_file(text);
  auto map = QuadMap<Surd>::symmetrized(parsed.matrices);
  CHECK(map.classify(Path::both).verdict == Verdict::Harmonic);
}
