#pragma once

#include <stdexcept>
#include <string>

namespace hopfcyclic {

// A computation declined because a mathematical hypothesis does not hold.
// The message names the hypothesis.
struct Refusal : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace hopfcyclic
