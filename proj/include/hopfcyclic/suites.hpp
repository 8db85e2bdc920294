#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcyclic/families.hpp"
#include "hopfcyclic/instance.hpp"
#include "hopfcyclic/simplified.hpp"

namespace hopfcyclic {

enum class Theory { HH, HC, HN, HP };
enum class ComplexKind { Canonical, Hat, Bar };

const char* theory_name(Theory t);
const char* complex_name(ComplexKind k);
std::optional<Theory> parse_theory(const std::string& s);
std::optional<ComplexKind> parse_complex(const std::string& s);

// The resolution of one instance built through a fixed degree, with the
// simplified complex created on demand.
class Session {
public:
    Session(const CrossedData& c, int top, std::optional<int> canonical_top = std::nullopt);

    const CrossedData& crossed() const { return *c_; }
    Resolution& res() { return *res_; }
    // Refuses unless the cocycle is invertible.
    Simplified& bar();
    // Canonical through its own top degree, hat through the smaller of that and
    // res().top(), bar through res().top() - 1.
    const MixedComplexData& complex(ComplexKind k);

private:
    const CrossedData* c_;
    std::unique_ptr<Resolution> res_;
    std::unique_ptr<Simplified> bar_;
    std::optional<MixedComplexData> hat_, bar_mixed_;
};

// A session deep enough for a homology table through `max_degree`.
Session homology_session(const CrossedData& c, ComplexKind k, Theory t, int max_degree, std::optional<int> window);

struct HomologyTable {
    Theory theory = Theory::HH;
    ComplexKind complex = ComplexKind::Canonical;
    int max_degree = 0;
    std::optional<int> window;
    std::vector<std::size_t> betti;
    std::vector<std::size_t> previous;  // window - 1, for HN and HP
    bool stable = true;

    bool operator==(const HomologyTable&) const = default;
};
// HN and HP refuse without a window.
HomologyTable homology_table(Session& s, ComplexKind k, Theory t, int max_degree, std::optional<int> window);

struct SuiteCheck {
    std::string name;
    bool ok = true;
    std::string detail;

    bool operator==(const SuiteCheck&) const = default;
};

struct SuiteReport {
    std::string suite;
    int bound = 0;
    std::optional<std::uint64_t> seed;
    std::vector<SuiteCheck> checks;
    std::vector<std::pair<std::string, std::string>> facts;  // dimensions and capability flags

    bool ok() const;
    void add(std::string name, bool ok, std::string detail = "");
    bool operator==(const SuiteReport&) const = default;
};

// Structural and mathematical validation of an instance file, with the
// capability flags of the crossed product when it builds.
SuiteReport check_instance(const InstanceFile& f);

// A session deep enough for the named suite at the given bound; the
// spectral sequences use the "spectral" depth.
Session suite_session(const CrossedData& c, const std::string& suite, int bound);

// b^2 = B^2 = bB + Bb = 0 through `bound` on the canonical, hat and bar
// complexes, and HH, HC agreement below `bound`.
SuiteReport suite_mixed(Session& s, int bound);
// psi phi = id through `bound`, chain maps, and the homotopy through bound - 1.
SuiteReport suite_comparison(Session& s, int bound);
// theta is an isomorphism intertwining the operators; closed low differentials.
SuiteReport suite_theta(Session& s, int bound);
SuiteReport suite_congruence(Session& s, int bound, const Sampling& sampling);
// Perturbation engine against the closed formulas; B omega B phi = 0 through `bound`.
SuiteReport suite_perturbation(Session& s, int bound);
SuiteReport suite_decomposition(Session& s, const std::vector<Subspace>& components, int bound);

}  // namespace hopfcyclic
