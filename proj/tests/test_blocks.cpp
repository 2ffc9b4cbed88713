#include <bit>
#include <map>
#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include <lcoh/blocks.hpp>
#include <lcoh/report.hpp>

#include "test_support.hpp"

using namespace lcoh;

namespace
{

IdealSpec p5x() { return IdealSpec(PrimeParam(5), 1, {CMonomialGenerator{Scalar(5), {1}}}); }

GradedDegree deg(std::vector<long> u) { return GradedDegree{std::move(u)}; }

} // namespace

TEST(Blocks, CornersAndOrder)
{
    const auto b1 = blocks(1);
    ASSERT_EQ(b1.size(), 2u);
    EXPECT_EQ(b1[0].corner, deg({0}));
    EXPECT_EQ(b1[0].to_string(), "{1}");
    EXPECT_EQ(b1[1].corner, deg({-1}));
    EXPECT_EQ(b1[1].to_string(), "{}");

    std::set<GradedDegree> corners;
    for (const auto &b : blocks(2)) {
        corners.insert(b.corner);
    }
    EXPECT_EQ(corners, (std::set<GradedDegree>{deg({0, 0}), deg({-1, 0}), deg({0, -1}), deg({-1, -1})}));
    EXPECT_EQ(blocks(3).size(), 8u);
    EXPECT_THROW(blocks(0), std::invalid_argument);
}

TEST(Blocks, WindowIsPartitioned)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        std::map<std::string, std::size_t> sizes;
        const auto cells = window_cells(n, 2);
        for (const auto &u : cells) {
            ++sizes[block_of(u).to_string()];
        }
        EXPECT_EQ(sizes.size(), std::size_t{1} << n);
        std::size_t total = 0;
        for (const auto &b : blocks(n)) {
            // Each member coordinate ranges over 0..2, the others over -2..-1.
            const std::size_t k = static_cast<std::size_t>(std::popcount(b.members));
            std::size_t expect = 1;
            for (std::size_t j = 0; j < n; ++j) {
                expect *= j < k ? 3 : 2;
            }
            EXPECT_EQ(sizes[b.to_string()], expect);
            total += expect;
        }
        EXPECT_EQ(total, cells.size());
    }
    EXPECT_THROW(window_cells(2, 0), std::invalid_argument);
}

TEST(BassNumbers, Examples)
{
    EXPECT_EQ(bass_numbers(ModuleShape(0, 0, 1)), (BassNumbers{1, 0}));
    EXPECT_EQ(bass_numbers(ModuleShape(1, 0, 0)), (BassNumbers{0, 1}));
    EXPECT_EQ(bass_numbers(ModuleShape(0, 3, 0)), (BassNumbers{0, 0}));
    EXPECT_EQ(bass_numbers(ModuleShape(2, 1, 1, {1, 0, 2})), (BassNumbers{4, 5}));
}

TEST(Sweep, GoldenP5X)
{
    const auto reports = sweep(p5x(), 2, {0, 1});
    ASSERT_EQ(reports.size(), 10u);
    for (const auto &r : reports) {
        if (r.i == 0) {
            EXPECT_TRUE(r.shape.is_zero());
            continue;
        }
        const bool nonneg = r.u.u[0] >= 0;
        EXPECT_EQ(r.shape, nonneg ? ModuleShape(0, 0, 1) : ModuleShape(0, 1, 0)) << r.u.to_string();
    }
    // Ordered by (i, u).
    EXPECT_EQ(reports.front().u, deg({-2}));
    EXPECT_EQ(reports[5].i, 1);
}

TEST(Sweep, CardinalityAndEmptyRange)
{
    const IdealSpec I(PrimeParam(3), 2, {CMonomialGenerator{Scalar(3), {1, 0}}, CMonomialGenerator{Scalar(1), {0, 1}}});
    EXPECT_EQ(sweep(I, 1, {0, 2}).size(), 27u);
    EXPECT_TRUE(sweep(I, 1, {2, 1}).empty());
    // Degrees outside [0, r] give zero rows.
    const auto outside = sweep(I, 1, {3, 3});
    ASSERT_EQ(outside.size(), 9u);
    for (const auto &r : outside) {
        EXPECT_TRUE(r.shape.is_zero());
    }
}

TEST(Sweep, ParallelMatchesSerial)
{
    const auto corpus = lcoh::testing::random_corpus(8, 5);
    for (const auto &I : corpus) {
        const DegreeRange all{0, static_cast<long>(I.num_generators())};
        const auto serial = emit_report(sweep(I, 2, all, 1), std::nullopt, ReportFormat::Csv);
        const auto parallel = emit_report(sweep(I, 2, all, 4), std::nullopt, ReportFormat::Csv);
        EXPECT_EQ(serial, parallel);
    }
}

TEST(VerifyBlockConstancy, GoldenIsConstant)
{
    const auto verdicts = verify_block_constancy(sweep(p5x(), 3, {0, 1}));
    ASSERT_EQ(verdicts.size(), 4u);
    for (const auto &v : verdicts) {
        EXPECT_TRUE(v.constant);
        EXPECT_TRUE(v.bass_constant);
    }
}

TEST(VerifyBlockConstancy, PerturbationIsCaught)
{
    auto reports = sweep(p5x(), 3, {1, 1});
    for (auto &r : reports) {
        if (r.u == deg({2})) {
            r.shape = ModuleShape(0, 0, 2);
        }
    }
    const auto verdicts = verify_block_constancy(reports);
    bool seen = false;
    for (const auto &v : verdicts) {
        if (v.block.to_string() == "{1}") {
            seen = true;
            EXPECT_FALSE(v.constant);
            ASSERT_TRUE(v.counterexample.has_value());
            EXPECT_EQ(*v.counterexample, deg({2}));
            // mu columns were not touched.
            EXPECT_TRUE(v.bass_constant);
        } else {
            EXPECT_TRUE(v.constant);
        }
    }
    EXPECT_TRUE(seen);
}

TEST(VerifyBlockConstancy, SingleCellIsVacuous)
{
    ComponentReport r;
    r.i = 1;
    r.u = deg({0, -1});
    r.shape = ModuleShape(0, 0, 0, {2});
    const auto verdicts = verify_block_constancy({r});
    ASSERT_EQ(verdicts.size(), 1u);
    EXPECT_TRUE(verdicts[0].constant);
    r.u = deg({1, -1});
    EXPECT_THROW(verify_block_constancy({r}), std::invalid_argument);
}

TEST(VerifyTorsionBound, Examples)
{
    const auto golden = verify_torsion_bound(sweep(p5x(), 3, {0, 1}));
    EXPECT_EQ(golden.m, 0u);
    EXPECT_EQ(golden.s, 0u);
    EXPECT_TRUE(golden.bound_ok);

    ComponentReport inner, outer;
    inner.u = deg({1});
    inner.shape = ModuleShape(0, 0, 0, {1});
    outer.u = deg({2});
    outer.shape = ModuleShape(0, 0, 0, {0, 0, 1});
    const auto bad = verify_torsion_bound({inner, outer});
    EXPECT_EQ(bad.m, 1u);
    EXPECT_EQ(bad.s, 3u);
    EXPECT_FALSE(bad.bound_ok);
}

TEST(Verify, CorpusPasses)
{
    for (const auto &I : lcoh::testing::random_corpus(12, 77)) {
        const auto reports = sweep(I, 2, {0, static_cast<long>(I.num_generators())});
        const auto v = verify(I, reports);
        EXPECT_TRUE(v.passed()) << to_text(I) << summarize(v);
        EXPECT_EQ(v.identity_checks.at("bass"), reports.size());
        EXPECT_EQ(v.identity_checks.at("residue"), reports.size());
    }
}

TEST(Verify, IdentityFailureIsReported)
{
    auto reports = sweep(p5x(), 1, {0, 1});
    reports.back().dimQ.value += 1;
    const auto v = verify(p5x(), reports);
    EXPECT_FALSE(v.passed());
    ASSERT_FALSE(v.failures.empty());
    EXPECT_EQ(v.failures[0].identity, "rational");
    EXPECT_NE(summarize(v).find("FAIL"), std::string::npos);
}

TEST(EmitReport, Csv)
{
    const auto reports = sweep(p5x(), 1, {1, 1});
    const auto text = emit_report(reports, std::nullopt, ReportFormat::Csv);
    EXPECT_EQ(text, "i,u,a,b,l,alpha,t,mu0,mu1,dimQ,dimFp,block\n"
                    "1,\"[-1]\",0,1,0,\"[]\",0,0,0,1,0,\"{}\"\n"
                    "1,\"[0]\",0,0,1,\"[]\",0,1,0,0,0,\"{1}\"\n"
                    "1,\"[1]\",0,0,1,\"[]\",0,1,0,0,0,\"{1}\"\n");
    const auto with_verdict = emit_report(reports, verify(p5x(), sweep(p5x(), 1, {0, 1})), ReportFormat::Csv);
    EXPECT_NE(with_verdict.find("\n# PASS\n"), std::string::npos);
}

TEST(EmitReport, Json)
{
    const auto reports = sweep(p5x(), 1, {0, 1});
    const auto doc = nlohmann::json::parse(emit_report(reports, verify(p5x(), reports), ReportFormat::Json));
    ASSERT_EQ(doc["reports"].size(), 6u);
    EXPECT_EQ(doc["reports"][3]["u"], nlohmann::json::array({-1}));
    EXPECT_EQ(doc["reports"][3]["b"], 1);
    EXPECT_EQ(doc["verdict"]["passed"], true);
    EXPECT_TRUE(doc["verdict"]["torsion_bound"]["bound_ok"].get<bool>());
}

TEST(EmitReport, UnknownFormat)
{
    try {
        parse_format("xml");
        FAIL() << "no error";
    } catch (const std::invalid_argument &e) {
        EXPECT_STREQ(e.what(), "unknown format 'xml' (supported: csv, json)");
    }
}
