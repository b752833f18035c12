#pragma once

#include <string>
#include <string_view>

#include "nildiag/splitter.hpp"

namespace nildiag {

inline constexpr std::string_view kCertificateSchema = "cert-v1";

/// JSON document: schema, field, order, mode, A/N/D in matrix text format,
/// per-block records, potency_s, diagonalizable, eigenvalues, checks.
std::string certificate_to_json(const SplitCertificate& cert);

/// Inverse of certificate_to_json. Throws ParseError on malformed input or a
/// schema other than cert-v1.
SplitCertificate certificate_from_json(std::string_view text);

}  // namespace nildiag
