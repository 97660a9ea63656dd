#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "acfree/cumulants.hpp"
#include "acfree/partition.hpp"
#include "acfree/rational.hpp"
#include "acfree/series.hpp"

namespace acfree {

// JSON forms used by the CLI.  Rationals travel as "p/q" strings so nothing
// is lost to binary floating point.

using Json = nlohmann::json;

inline Json to_json(const std::vector<Rational>& values) {
  Json array = Json::array();
  for (const Rational& v : values) array.push_back(to_string(v));
  return array;
}

inline std::vector<Rational> rationals_from_json(const Json& array) {
  if (!array.is_array()) throw std::invalid_argument("expected a JSON array of rationals");
  std::vector<Rational> values;
  for (const auto& item : array) {
    if (item.is_number_integer()) {
      values.emplace_back(item.get<long long>());
    } else if (item.is_string()) {
      values.push_back(parse_rational(item.get<std::string>()));
    } else {
      throw std::invalid_argument("rational entries must be strings or integers");
    }
  }
  return values;
}

inline const char* to_string(CumulantKind kind) {
  return kind == CumulantKind::boolean_kind ? "boolean" : "free";
}

inline Json to_json(const MomentSequence& m) {
  return Json{{"kind", "moments"}, {"order", m.order()}, {"values", to_json(m.values)}};
}

inline Json to_json(const CumulantSequence& c) {
  return Json{{"kind", to_string(c.kind)}, {"order", c.order()}, {"values", to_json(c.values)}};
}

inline Json to_json(const RationalSeries& s) {
  return Json{{"order", s.order()}, {"coefficients", to_json(s.coefficients())}};
}

inline RationalSeries series_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  return RationalSeries(order, rationals_from_json(j.at("coefficients")));
}

/// Structured partition form: a list of blocks, each a list of elements.
inline Json to_json(const Partition& p) {
  Json blocks = Json::array();
  for (const auto& block : p.blocks()) blocks.push_back(block);
  return blocks;
}

inline Partition partition_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of blocks");
  std::vector<Partition::Block> blocks;
  int max_element = 0;
  for (const auto& block : j) {
    Partition::Block b;
    for (const auto& element : block) {
      b.push_back(element.get<int>());
      max_element = std::max(max_element, b.back());
    }
    blocks.push_back(std::move(b));
  }
  return Partition(max_element, std::move(blocks));
}

inline Json to_json(const Coloring& c) {
  return Json{{"colours", c.colour_count}, {"values", c.values}};
}

/// "1,2,4,8" or "1/2, -3/4" into rationals.
inline std::vector<Rational> parse_rational_csv(const std::string& text) {
  std::vector<Rational> values;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) values.push_back(parse_rational(item));
    pos = comma + 1;
  }
  if (values.empty()) throw std::invalid_argument("expected a comma-separated list of rationals");
  return values;
}

}  // namespace acfree
