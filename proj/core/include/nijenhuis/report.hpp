#pragma once

#include "nijenhuis/geomcheck.hpp"
#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/minimality.hpp"
#include "nijenhuis/symring.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace nijenhuis {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const Rational& q);
Json to_json(const RatVec& v);
Json to_json(Complex z);
Json to_json(const SymPoly& p);

Json catalog_entry(const SpaceDescriptor& space);
Json minimality_json(const SpaceDescriptor& space, const MatrixRep& rep, const MinimalityVerdict& verdict,
                     const std::optional<ChainMinimality>& chain);
Json nogo_json(const NogoCertificate& cert);
Json suite_json(const SuiteReport& report);
Json symbolic_json(const SymbolicCertificate& cert);
Json spectrum_json(const SpectrumReport& report, const OrbitSample& sample);

/// Top-level document: {"report_version", "tool_version", "command", "config", "result"}.
Json envelope(const std::string& command, Json config, Json result);

}  // namespace nijenhuis
