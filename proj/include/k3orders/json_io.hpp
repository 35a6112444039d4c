#pragma once

#include <json.hpp>
#include <string>

#include "k3orders/matrix.hpp"

namespace k3orders {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers while they fit in 64 bits and as
// decimal strings beyond that, so round-trips stay exact at any size.
Json int_to_json(const Int& x);
Json intvec_to_json(const IntVec& v);
Json matrix_to_json(const IntMatrix& m);
/// Rationals render as canonical strings: "0", "5", "-3/2".
Json rat_to_json(const Rat& q);
Json ratvec_to_json(const RatVec& v);

// Parsers take the field path for error reporting; all throw SchemaError.
Int int_from_json(const Json& j, const std::string& path);
IntVec intvec_from_json(const Json& j, const std::string& path);
IntMatrix matrix_from_json(const Json& j, const std::string& path);

/// Member access that reports the missing/ill-typed path.
const Json& require_field(const Json& j, const char* key,
                          const std::string& path);

}  // namespace k3orders
