#include "k3orders/json_io.hpp"

#include <cstdint>
#include <limits>

#include "k3orders/errors.hpp"

namespace k3orders {

namespace {

const Int kInt64Min{std::numeric_limits<std::int64_t>::min()};
const Int kInt64Max{std::numeric_limits<std::int64_t>::max()};

}  // namespace

Json int_to_json(const Int& x) {
  if (x >= kInt64Min && x <= kInt64Max) {
    return Json(static_cast<std::int64_t>(x));
  }
  return Json(x.str());
}

Json intvec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

Json rat_to_json(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  if (den == 1) return Json(num.str());
  return Json(num.str() + "/" + den.str());
}

Json ratvec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const Rat& q : v) a.push_back(rat_to_json(q));
  return a;
}

Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return Int(s);
    } catch (const std::exception&) {
      throw SchemaError(path, "string is not a decimal integer: \"" + s + "\"");
    }
  }
  throw SchemaError(path, "expected an integer (number or decimal string)");
}

IntVec intvec_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of integers");
  IntVec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return v;
}

IntMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(path, "expected a non-empty array of rows");
  }
  std::vector<IntVec> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(intvec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) {
      throw SchemaError(path, "rows have inconsistent lengths");
    }
  }
  return IntMatrix::from_rows(rows);
}

const Json& require_field(const Json& j, const char* key,
                          const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  }
  return *it;
}

}  // namespace k3orders
