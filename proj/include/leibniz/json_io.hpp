#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "leibniz/tensor.hpp"

namespace leibniz {

/// {"dim": n, "labels": [...], "products": [[i, j, [[t, "c"], ...]], ...]}
/// with 1-based indices and scalars in their text form.
inline nlohmann::ordered_json tensor_to_json(const StructureTensor& t) {
  nlohmann::ordered_json j;
  j["dim"] = t.dim();
  j["labels"] = t.labels();
  auto products = nlohmann::ordered_json::array();
  for (size_t a = 1; a <= t.dim(); ++a)
    for (size_t b = 1; b <= t.dim(); ++b) {
      const auto& cell = t.cell(a, b);
      if (cell.empty()) continue;
      auto terms = nlohmann::ordered_json::array();
      for (const auto& term : cell) terms.push_back({term.t, term.c.str()});
      products.push_back({a, b, terms});
    }
  j["products"] = products;
  return j;
}

inline StructureTensor tensor_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("products"))
      throw InputError("algebra JSON needs \"dim\" and \"products\"");
    const size_t n = j.at("dim").get<size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    StructureTensor t(n, labels);
    for (const auto& p : j.at("products")) {
      if (!p.is_array() || p.size() != 3) throw InputError("algebra JSON: product entries are [i, j, terms]");
      const size_t a = p[0].get<size_t>(), b = p[1].get<size_t>();
      for (const auto& term : p[2]) {
        if (!term.is_array() || term.size() != 2) throw InputError("algebra JSON: terms are [t, \"scalar\"]");
        const size_t k = term[0].get<size_t>();
        if (!t.coefficient(a, b, k).is_zero())
          throw InputError("algebra JSON: duplicate constant at (" + std::to_string(a) + ", " + std::to_string(b) +
                           ", " + std::to_string(k) + ")");
        Scalar c = term[1].is_string() ? Scalar::parse(term[1].get<std::string>())
                                       : Scalar::parse(term[1].dump());
        t.set(a, b, k, c);
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("algebra JSON: ") + e.what());
  }
}

inline std::string tensor_to_json_text(const StructureTensor& t) { return tensor_to_json(t).dump(); }

inline StructureTensor tensor_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("algebra JSON: ") + e.what());
  }
  return tensor_from_json(j);
}

inline StructureTensor read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tensor_from_json_text(ss.str());
}

}  // namespace leibniz
