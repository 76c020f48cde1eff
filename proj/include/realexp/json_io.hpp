#pragma once

#include <string>

#include <json.hpp>

#include "realexp/certificates.hpp"

namespace realexp::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

Json to_json(const ExponentValue& v);
/// Accepts "2+e" style strings, integers, or {"1": rational, "<symbol>": int}.
ExponentValue exponent_from_json(const Json& j, const BasisPtr& basis);
Json to_json(const ExponentVector& v);
ExponentVector vector_from_json(const Json& j, const BasisPtr& basis);

Json to_json(const ConstantBasis& basis);
BasisPtr basis_from_json(const Json& j);
Json to_json(const ExponentGroup& g);
ExponentGroup group_from_json(const Json& j);

Json to_json(const BoxModule& box);
BoxModule box_from_json(const Json& j, const BasisPtr& basis);

/// {"n", "boxes": [...], "terms": {"deg": [box ids]}, "differentials": {"deg": [...]}}.
Json to_json(const BoxComplex& c);
BoxComplex complex_from_json(const Json& j, const BasisPtr& basis);

Json to_json(const CellHomologyTable& t);
std::string to_csv(const CellHomologyTable& t);
/// One grid per homological degree; coordinate 0 runs left to right, and
/// for n = 2 coordinate 1 runs bottom to top.  Throws InvalidInput for n > 2.
std::string to_grid(const CellHomologyTable& t);

Json to_json(const TruncationSequence& s);
TruncationSequence sequence_from_json(const Json& j, const BasisPtr& basis);

Json to_json(const SupportEscapeCertificate& c);
Json to_json(const ExtCertificate& c);
/// Recomputes the certificate from its stored parameters and compares the
/// serialized forms byte for byte.
bool reverify(const Json& certificate);

Json to_json(const ProjectiveResolution& r, const ResolutionCheck& check);

Json error_json(const std::string& code, const std::string& message);

}  // namespace realexp::io
