// JSON documents for schemes, verification reports and tradeoff vertices.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "seccache/scheme.h"
#include "seccache/tradeoff.h"
#include "seccache/verifier.h"

namespace seccache {

inline constexpr int kSchemeFormatVersion = 1;
/// Deliveries are stored explicitly when N^K is at most this.
inline constexpr std::uint64_t kExplicitDeliveryLimit = 256;

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// Throws CapExceeded if the worst-case rate cannot be computed.
nlohmann::json scheme_to_json(const LinearScheme& s);
/// Caches (and explicit deliveries) come from the document; generated
/// deliveries are rebuilt from the parameters. Throws DocumentError.
LinearScheme scheme_from_json(const nlohmann::json& doc);

void save_scheme(const LinearScheme& s, const std::filesystem::path& path);
/// Throws DocumentError for unreadable or malformed files.
LinearScheme load_scheme(const std::filesystem::path& path);

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json curves_to_json(const CurveData& data, bool include_prior);

}  // namespace seccache
