#include "qsm/mapfile.hpp"

#include <fstream>
#include <sstream>

namespace qsm {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse_error, what); }

Rational rat_from_json(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": rational literal must be a string");
  return parse_rational(j.get<std::string>());
}

int int_field(const json& j, const std::string& key) {
  if (!j.contains(key)) bad("missing field '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad("field '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

json surd_to_json(const Surd& v) {
  if (v.is_rational()) return format_rational(v.q());
  json out = json::object();
  if (v.q() != 0) out["q"] = format_rational(v.q());
  if (v.s2() != 0) out["s2"] = format_rational(v.s2());
  if (v.s3() != 0) out["s3"] = format_rational(v.s3());
  if (v.s6() != 0) out["s6"] = format_rational(v.s6());
  return out;
}

Surd surd_from_json(const json& j) {
  if (j.is_string()) return Surd(parse_rational(j.get<std::string>()));
  if (!j.is_object()) bad("scalar literal must be a string or an object");
  Rational q, s2, s3, s6;
  for (const auto& [key, value] : j.items()) {
    if (key == "q") q = rat_from_json(value, "key 'q'");
    else if (key == "s2") s2 = rat_from_json(value, "key 's2'");
    else if (key == "s3") s3 = rat_from_json(value, "key 's3'");
    else if (key == "s6") s6 = rat_from_json(value, "key 's6'");
    else bad("unknown scalar component '" + key + "'");
  }
  return Surd::make(q, s2, s3, s6);
}

json matrix_to_json(const Matrix<Surd>& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(surd_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<Surd> matrix_from_json(const json& j, int expected_size) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected_size) bad("matrix must be an array of " + std::to_string(expected_size) + " rows");
  Matrix<Surd> a(expected_size, expected_size);
  for (int i = 0; i < expected_size; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != expected_size) bad("matrix row must hold " + std::to_string(expected_size) + " entries");
    for (int k = 0; k < expected_size; ++k) a(i, k) = surd_from_json(row.at(static_cast<std::size_t>(k)));
  }
  return a;
}

ParsedMapFile parse_map_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "m" && key != "n" && key != "matrices" && key != "metadata") bad("unknown field '" + key + "'");
  }

  ParsedMapFile out;
  out.m = int_field(doc, "m");
  out.n = int_field(doc, "n");
  if (out.m < 1) bad("domain dimension m must be at least 1");
  if (out.n < 1) bad("codomain dimension n must be at least 1");

  if (!doc.contains("matrices")) bad("missing field 'matrices'");
  const json& mats = doc.at("matrices");
  if (!mats.is_array() || static_cast<int>(mats.size()) != out.n + 1) bad("'matrices' must hold n+1 = " + std::to_string(out.n + 1) + " matrices");
  out.matrices.reserve(mats.size());
  for (const auto& mj : mats) out.matrices.push_back(matrix_from_json(mj, out.m + 1));

  if (doc.contains("metadata")) {
    const json& md = doc.at("metadata");
    if (!md.is_object()) bad("'metadata' must be an object");
    for (const auto& [key, value] : md.items()) {
      if (key == "name" || key == "description") {
        if (!value.is_string()) bad("metadata field '" + key + "' must be a string");
        if (key == "name") out.metadata.name = value.get<std::string>();
        else out.metadata.description = value.get<std::string>();
      } else {
        bad("unknown metadata field '" + key + "'");
      }
    }
  }
  return out;
}

ParsedMapFile load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map_file(buf.str());
}

std::string emit_map_file(const std::vector<Matrix<Surd>>& matrices, const MapMetadata& metadata) {
  if (matrices.empty()) fail(Errc::dimension_mismatch, "no matrices to serialize");
  json doc = json::object();
  doc["m"] = matrices.front().rows() - 1;
  doc["n"] = static_cast<int>(matrices.size()) - 1;
  json mats = json::array();
  for (const auto& a : matrices) mats.push_back(matrix_to_json(a));
  doc["matrices"] = std::move(mats);
  if (metadata.name || metadata.description) {
    json md = json::object();
    if (metadata.name) md["name"] = *metadata.name;
    if (metadata.description) md["description"] = *metadata.description;
    doc["metadata"] = std::move(md);
  }
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "cannot write file '" + path + "'");
  out << text;
}

}  // namespace qsm
