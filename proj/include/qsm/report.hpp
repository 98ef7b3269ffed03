#ifndef QSM_REPORT_HPP
#define QSM_REPORT_HPP

#include <string>

#include <json.hpp>

namespace qsm {

/// Plain-text rendering of a structured report: one "key: value" line per
/// leaf, nested keys joined by dots, arrays indexed. Carries exactly the
/// data of the JSON document.
inline void render_text_into(const nlohmann::json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_text_into(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (j.is_array()) {
    std::size_t idx = 0;
    for (const auto& value : j) render_text_into(value, prefix + "[" + std::to_string(idx++) + "]", out);
    if (j.empty()) out += prefix + ": []\n";
    return;
  }
  out += prefix + ": ";
  if (j.is_string()) out += j.get<std::string>();
  else out += j.dump();
  out += "\n";
}

inline std::string render_text(const nlohmann::json& j) {
  std::string out;
  render_text_into(j, "", out);
  return out;
}

}  // namespace qsm

#endif
