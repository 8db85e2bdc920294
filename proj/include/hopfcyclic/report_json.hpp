#pragma once

#include "json.hpp"

#include "hopfcyclic/spectral.hpp"
#include "hopfcyclic/suites.hpp"

namespace hopfcyclic {

// Machine-readable reports. Keys are sorted, so printing is deterministic,
// and each from_json inverts the matching to_json.
nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const HomologyTable& t);
nlohmann::json to_json(const SpectralReport& r);

SuiteReport suite_report_from_json(const nlohmann::json& j);
HomologyTable homology_table_from_json(const nlohmann::json& j);
SpectralReport spectral_report_from_json(const nlohmann::json& j);

}  // namespace hopfcyclic
