#pragma once

#include <nlohmann/json.hpp>

namespace droidlab {

// Deterministic exports need stable field order everywhere, so the whole
// project uses the order-preserving variant.
using Json = nlohmann::ordered_json;

}  // namespace droidlab
