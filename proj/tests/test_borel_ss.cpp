#include "bpr/borel_ss.hpp"
#include "bpr/closed_form.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bpr;

namespace {

DifferentialRecord only(const std::string& src, i64 p = 3)
{
    auto r = differentials(parse_monomial(src), p);
    if (r.size() != 1) throw std::runtime_error("expected one differential on " + src);
    return r.front();
}

std::map<RDegree, GroupExpr> groups(const EinftyTable& t)
{
    std::map<RDegree, GroupExpr> g;
    for (const auto& [d, r] : t.entries) g[d] = r.group;
    return g;
}

} // namespace

TEST(Differentials, FirstMapEven)
{
    auto r = only("s^2");
    EXPECT_EQ(to_string(r.target), "v1*b^2");
    EXPECT_EQ(r.stage, 2);
    EXPECT_EQ(r.map, PatternMap::First);
}

TEST(Differentials, FirstMapOdd)
{
    auto r = only("v2*s^2");
    EXPECT_EQ(to_string(r.target), "v1*v2*b^3");
    EXPECT_EQ(r.stage, 3);
}

TEST(Differentials, LeibnizUnit)
{
    auto r = only("s^4");
    EXPECT_EQ(r.unit, 2);
    EXPECT_EQ(to_string(r.target), "v1*s^2*b^2");
}

TEST(Differentials, SecondMap)
{
    auto r = only("v1*s^4");
    EXPECT_EQ(to_string(r.target), "phi(v1)*b^5");
    EXPECT_EQ(r.stage, 5);
    EXPECT_EQ(r.map, PatternMap::Second);
}

TEST(Differentials, PermanentCycles)
{
    EXPECT_TRUE(differentials(parse_monomial("1"), 3).empty());
    EXPECT_TRUE(differentials(parse_monomial("v1*b^4"), 3).empty());
    // i_1 = 1 but l/1 = 1 is not -1 mod 3
    EXPECT_TRUE(differentials(parse_monomial("v1*s^2"), 3).empty());
}

TEST(Differentials, RandomShiftAndIncomingInverse)
{
    std::mt19937 g(2024);
    std::uniform_int_distribution<int> bit(0, 1), l(-30, 30), k(0, 20), j(0, 2);
    for (i64 p : {3, 5}) {
        for (int t = 0; t < 400; ++t) {
            Monomial m = make_monomial({bit(g), bit(g), bit(g)}, {j(g), j(g)}, l(g), k(g));
            for (const auto& r : differentials(m, p)) {
                EXPECT_EQ(degree(r.target, p) - degree(r.source, p), (RDegree{-1, 0}));
                EXPECT_EQ(underlying_dim(degree(r.source, p)) - underlying_dim(degree(r.target, p)), 1);
                EXPECT_NE(r.unit % p, 0);
                bool found = false;
                for (const auto& back : incoming(r.target, p))
                    if (back.source == m) found = true;
                EXPECT_TRUE(found) << to_string(m);
            }
        }
    }
}

TEST(Differentials, RuleParse)
{
    DifferentialRule r = DifferentialRule::parse("first-even=1,second-odd=-1");
    EXPECT_EQ(r.first_even, 1);
    EXPECT_EQ(r.second_odd, -1);
    EXPECT_FALSE(r.is_standard());
    EXPECT_TRUE(DifferentialRule::parse("").is_standard());
    EXPECT_THROW(DifferentialRule::parse("third=2"), std::invalid_argument);
    EXPECT_EQ(differentials(parse_monomial("s^2"), 3, r).front().stage, 3);
}

TEST(E2Page, BHasRelation)
{
    PageTable t = e2_page({0, 0, -1, -1}, 3, 1);
    const PageEntry& e = t.entries.at({0, -1});
    ASSERT_EQ(e.basis.size(), 1u);
    EXPECT_EQ(to_string(e.basis[0]), "b");
    ASSERT_EQ(e.relations.rows(), 1u);
    EXPECT_EQ(e.relations(0, 0), 3);
}

TEST(E2Page, BasisDegreesAndCap)
{
    const Window w{-6, 6, -3, 3};
    PageTable t = e2_page(w, 3, 6);
    for (const auto& [d, e] : t.entries)
        for (const auto& m : e.basis) {
            EXPECT_EQ(degree(m, 3), d);
            EXPECT_LE(m.k, 6);
        }
    EXPECT_THROW(e2_page(w, 3, 6, 10), std::length_error);
}

TEST(Einfty, KnownValues)
{
    auto t = run_to_einfty({-10, 10, -10, 10}, 3);
    EXPECT_EQ(t.at({0, 0}), (GroupExpr{1, 0}));
    EXPECT_EQ(t.at({1, 1}), (GroupExpr{0, 1}));
    EXPECT_EQ(t.at({0, -1}), (GroupExpr{0, 1}));
    EXPECT_TRUE(t.edge_unreliable.empty());
}

TEST(Einfty, PatternEqualsSnf)
{
    for (i64 p : {3, 5, 7}) {
        const Window w{-12, 12, -6, 6};
        EngineOptions o;
        auto snf = run_to_einfty(w, p, o);
        o.mode = Mode::Pattern;
        auto pat = run_to_einfty(w, p, o);
        EXPECT_EQ(groups(snf), groups(pat)) << "p=" << p;
    }
}

TEST(Einfty, StableUnderDoubledBCap)
{
    const Window w{-10, 10, -5, 5};
    EngineOptions o;
    o.b_report = default_b_report(w, 3);
    auto k1 = run_to_einfty(w, 3, o);
    o.b_report *= 2;
    auto k2 = run_to_einfty(w, 3, o);
    EXPECT_EQ(groups(k1), groups(k2));
}

TEST(Einfty, MatchesClosedFormSmall)
{
    for (i64 p : {3, 5, 7}) {
        const Window w{-14, 14, -7, 7};
        EXPECT_EQ(groups(run_to_einfty(w, p)), closed_form_table(w, p)) << "p=" << p;
    }
}

TEST(Einfty, BasisLabelsPresent)
{
    auto t = run_to_einfty({0, 4, 0, 4}, 3);
    for (const auto& [d, r] : t.entries) {
        EXPECT_EQ(r.basis_labels.size(), static_cast<std::size_t>(r.group.free_rank + r.group.modp_rank));
    }
    EXPECT_EQ(t.entries.at({0, 0}).basis_labels, std::vector<std::string>{"1"});
}

TEST(Einfty, WrongRuleIsDetected)
{
    const Window w{-10, 10, -5, 5};
    EngineOptions o;
    o.rule.first_even = 1;
    EXPECT_NE(groups(run_to_einfty(w, 3, o)), closed_form_table(w, 3));
}

TEST(Einfty, NodeCap)
{
    EngineOptions o;
    o.max_nodes = 10;
    EXPECT_THROW(run_to_einfty({-10, 10, -5, 5}, 3, o), std::length_error);
}

TEST(Tate, KnownValues)
{
    auto t = tate({-6, 6, -6, 6}, 3);
    EXPECT_EQ(t.at({0, -5}), (GroupExpr{0, 1}));
    EXPECT_EQ(t.at({1, 0}), (GroupExpr{}));
    EXPECT_EQ(t.at({0, 4}), (GroupExpr{0, 1}));
}

TEST(Tate, OnlyTheBAxis)
{
    for (i64 p : {3, 5}) {
        const Window w{-8, 8, -4, 4};
        auto t = tate(w, p);
        for (RDegree d : w.degrees()) EXPECT_EQ(t.at(d), (d.a == 0 ? GroupExpr{0, 1} : GroupExpr{})) << to_string(d);
    }
}
