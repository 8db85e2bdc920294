#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hopfcyclic/report_json.hpp"

using namespace hopfcyclic;
using testing_support::fixture;

TEST(ReportJson, SuiteReportRoundTrips) {
    Session s = suite_session(fixture("z2_smash"), "congruence", 2);
    SuiteReport r = suite_congruence(s, 2, Sampling{7});
    ASSERT_TRUE(r.seed.has_value());
    const nlohmann::json j = to_json(r);
    EXPECT_EQ(suite_report_from_json(nlohmann::json::parse(j.dump())), r);
}

TEST(ReportJson, SuiteReportWithoutSeedRoundTrips) {
    Session s = suite_session(fixture("trivial_hopf"), "mixed", 3);
    SuiteReport r = suite_mixed(s, 3);
    const nlohmann::json j = to_json(r);
    EXPECT_TRUE(j.at("seed").is_null());
    EXPECT_EQ(suite_report_from_json(nlohmann::json::parse(j.dump())), r);
}

TEST(ReportJson, HomologyTableRoundTrips) {
    const CrossedData& c = fixture("z2_group");
    for (Theory t : {Theory::HC, Theory::HP}) {
        const std::optional<int> w = t == Theory::HP ? std::optional<int>(2) : std::nullopt;
        Session s = homology_session(c, ComplexKind::Canonical, t, 3, w);
        HomologyTable h = homology_table(s, ComplexKind::Canonical, t, 3, w);
        EXPECT_EQ(homology_table_from_json(nlohmann::json::parse(to_json(h).dump())), h);
    }
}

TEST(ReportJson, SpectralReportRoundTrips) {
    Session s = suite_session(fixture("z2_smash"), "spectral", 2);
    SpectralReport r = first_ss(s.bar(), 2);
    ASSERT_FALSE(r.pages.empty());
    EXPECT_EQ(spectral_report_from_json(nlohmann::json::parse(to_json(r).dump())), r);
}

TEST(ReportJson, PrintingIsDeterministic) {
    Session s = suite_session(fixture("z2_smash"), "theta", 2);
    EXPECT_EQ(to_json(suite_theta(s, 2)).dump(2), to_json(suite_theta(s, 2)).dump(2));
}
