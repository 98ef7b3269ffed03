#ifndef QSM_MAPFILE_HPP
#define QSM_MAPFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsm/matrix.hpp"
#include "qsm/surd.hpp"

namespace qsm {

struct MapMetadata {
  std::optional<std::string> name;
  std::optional<std::string> description;
};

/// Contents of a map file: n+1 symmetric-intended (m+1)x(m+1) matrices of
/// exact scalars plus optional metadata. Parsing validates shape and the
/// literal grammar only; sphericity is the map constructor's job.
struct ParsedMapFile {
  int m = 0;
  int n = 0;
  std::vector<Matrix<Surd>> matrices;
  MapMetadata metadata;
};

/// Scalar literal <-> JSON. Grammar (bit-exact):
///   scalar := "p" | "p/q"                       (rational shorthand)
///           | object over {"q","s2","s3","s6"}  (values "p" | "p/q",
///                                                absent keys mean 0)
/// Canonical emission: rationals as the bare string with gcd 1 and positive
/// denominator; other surds as an object holding only the nonzero keys.
nlohmann::json surd_to_json(const Surd& v);
Surd surd_from_json(const nlohmann::json& j);

ParsedMapFile parse_map_file(const std::string& text);
ParsedMapFile load_map_file(const std::string& path);

/// Canonical serialization: sorted keys, 2-space indent, trailing newline.
/// emit -> parse -> emit is byte-identical.
std::string emit_map_file(const std::vector<Matrix<Surd>>& matrices, const MapMetadata& metadata = {});

nlohmann::json matrix_to_json(const Matrix<Surd>& a);
Matrix<Surd> matrix_from_json(const nlohmann::json& j, int expected_size);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace qsm

#endif
