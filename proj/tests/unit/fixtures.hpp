#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hopfcyclic/instance.hpp"

namespace hopfcyclic::testing_support {

inline const CrossedData& fixture(const std::string& name) {
    static std::map<std::string, std::unique_ptr<CrossedData>> cache;
    auto& slot = cache[name];
    if (!slot) {
        BuildResult b = build_instance(parse_instance(data_dir() + "/" + name + ".json"));
        slot = std::make_unique<CrossedData>(*b.data);
    }
    return *slot;
}

inline const std::vector<std::string> kAllFixtures{"trivial_hopf", "z2_group",      "z2_smash",    "z2_smash_f3",
                                                   "klein_twisted", "swap_relative", "dual_cocycle"};

}  // namespace hopfcyclic::testing_support
