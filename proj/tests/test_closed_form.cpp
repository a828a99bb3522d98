#include "bpr/closed_form.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bpr;

TEST(ClosedForm, KnownValues)
{
    EXPECT_EQ(closed_form_group({1, 1}, 3), (GroupExpr{0, 1}));
    EXPECT_EQ(closed_form_group({0, -2}, 3), (GroupExpr{0, 1}));
    EXPECT_EQ(closed_form_group({4, 4}, 3), (GroupExpr{1, 0}));
    EXPECT_EQ(closed_form_group({0, 0}, 3), (GroupExpr{1, 0}));
}

TEST(ClosedForm, Descriptors)
{
    auto eo = family_descriptor({1}, {}, 3);
    ASSERT_TRUE(eo);
    EXPECT_EQ(eo->tag, FamilyTag::EvenOddI);
    EXPECT_EQ(eo->stride, 1);
    EXPECT_EQ(eo->b_bound, 2);
    EXPECT_TRUE(eo->excludes_minus_one);
    EXPECT_EQ(eo->scalar, Scalar::ModP);

    auto ee = family_descriptor({}, {0, 1}, 3);
    ASSERT_TRUE(ee);
    EXPECT_EQ(ee->tag, FamilyTag::EvenEvenI);
    EXPECT_EQ(ee->stride, 9);
    EXPECT_EQ(ee->b_bound, 17);
    EXPECT_FALSE(ee->excludes_minus_one);
    EXPECT_EQ(ee->scalar, Scalar::Free);

    auto oe = family_descriptor({0, 1, 1}, {}, 3);
    ASSERT_TRUE(oe);
    EXPECT_EQ(oe->tag, FamilyTag::OddEvenI);
    EXPECT_EQ(oe->stride, 3);
    EXPECT_EQ(oe->b_bound, 9);

    auto oo = family_descriptor({0, 1}, {1}, 5);
    ASSERT_TRUE(oo);
    EXPECT_EQ(oo->tag, FamilyTag::OddOddI);
    EXPECT_EQ(oo->stride, 5);
    EXPECT_EQ(oo->b_bound, 16);

    EXPECT_FALSE(family_descriptor({}, {}, 3));
}

TEST(ClosedForm, ListingExamples)
{
    auto at11 = family_listing({1, 1, 1, 1}, 3);
    ASSERT_EQ(at11.size(), 1u);
    EXPECT_EQ(at11[0].family, FamilyTag::EvenOddI);
    EXPECT_EQ(to_string(at11[0].monomial), "v1");
    auto unit = family_listing({0, 0, 0, 0}, 3);
    ASSERT_EQ(unit.size(), 1u);
    EXPECT_EQ(unit[0].family, FamilyTag::Unit);
}

TEST(ClosedForm, ListingIsConsistent)
{
    for (i64 p : {3, 5}) {
        const Window w{-20, 20, -10, 10};
        auto listing = family_listing(w, p);
        std::set<Monomial> seen;
        for (std::size_t i = 0; i < listing.size(); ++i) {
            const auto& c = listing[i];
            EXPECT_TRUE(seen.insert(c.monomial).second) << "listed twice: " << to_string(c.monomial);
            EXPECT_EQ(degree(c.monomial, p), c.degree);
            EXPECT_TRUE(w.contains(c.degree));
            EXPECT_EQ(c.family, classify(c.monomial));
            if (c.group.free_rank) {
                EXPECT_EQ(c.monomial.k, 0);
                EXPECT_EQ(c.group.modp_rank, 0);
            }
            if (coefficient_group(c.monomial.I) == Scalar::ModP) EXPECT_EQ(c.group.free_rank, 0);
            if (auto fd = family_descriptor(c.monomial.I, c.monomial.J, p)) {
                EXPECT_LT(c.monomial.k, fd->b_bound);
                EXPECT_LT(c.monomial.k, closed_form_b_bound(w, p));
            }
            if (i) EXPECT_LE(listing[i - 1].degree, c.degree);
        }
        auto table = closed_form_table(w, p);
        for (RDegree d : w.degrees()) {
            auto it = table.find(d);
            EXPECT_EQ(it == table.end() ? GroupExpr{} : it->second, closed_form_group(d, p));
        }
    }
}

TEST(ClosedForm, EmptyWindow)
{
    EXPECT_TRUE(family_listing({1, 0, 0, 0}, 3).empty());
}
