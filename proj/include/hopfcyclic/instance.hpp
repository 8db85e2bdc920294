#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hopfcyclic/crossed.hpp"

namespace hopfcyclic {

// Structural parse error; `where` is a JSON path such as "A.mult[3].i".
struct ParseError : std::runtime_error {
    std::string where;
    ParseError(std::string loc, const std::string& what) : std::runtime_error(loc + ": " + what), where(std::move(loc)) {}
};

struct InstanceFile {
    std::string id;
    std::uint32_t prime = 0;
    AlgebraData A;
    HopfData H;
    std::vector<Vec> action;
    std::vector<Vec> cocycle;
    std::vector<Vec> K_basis;
    bool K_given = false;
    std::vector<std::vector<Vec>> components;  // spanning sets inside H / [H, H]
    bool components_grouplike = false;
    bool h_is_group = false;
};

InstanceFile parse_instance_text(const std::string& text);
InstanceFile parse_instance(const std::string& path);
BuildResult build_instance(const InstanceFile& f);
// Components of H / [H, H] for the instance, generated from grouplikes when requested.
std::vector<Subspace> instance_components(const InstanceFile& f, const CrossedData& c);

// Directory holding the bundled fixtures.
std::string data_dir();
std::vector<std::string> bundled_fixtures();

}  // namespace hopfcyclic
