#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kcompound/dense_matrix.hpp"

namespace kcompound::cli {

/// Deterministic rendering: object keys sorted, two-space indentation,
/// floating-point values with 17 significant digits, non-finite values as null.
std::string canonical_dump(const nlohmann::json& value);

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

nlohmann::json matrix_to_json(const DenseMatrix& a);

}  // namespace kcompound::cli
