#include "bpr/monomial.hpp"

#include <gtest/gtest.h>

using namespace bpr;

TEST(Monomial, Degrees)
{
    EXPECT_EQ(degree(make_monomial({1}, {}, 0, 0), 3), (RDegree{1, 1}));
    EXPECT_EQ(degree(make_monomial({}, {}, 1, 0), 3), (RDegree{2, -1}));
    EXPECT_EQ(degree(make_monomial({1}, {1}, -1, 1), 3), (RDegree{3, 5}));
}

TEST(Monomial, CoefficientGroup)
{
    EXPECT_EQ(coefficient_group({}), Scalar::Free);
    EXPECT_EQ(coefficient_group({1}), Scalar::ModP);
    EXPECT_EQ(coefficient_group({1, 0, 1}), Scalar::Free);
}

TEST(Monomial, Classify)
{
    EXPECT_EQ(classify({1}, {}), FamilyTag::EvenOddI);
    EXPECT_EQ(classify({}, {0, 1}), FamilyTag::EvenEvenI);
    EXPECT_EQ(classify({0, 1}, {1}), FamilyTag::OddOddI);
    EXPECT_EQ(classify({1, 1}, {}), FamilyTag::OddEvenI);
    EXPECT_EQ(classify({}, {}), FamilyTag::Unit);
}

TEST(Monomial, Negligible)
{
    EXPECT_TRUE(negligible({2, 0}));
    EXPECT_FALSE(negligible({1, 1}));
    EXPECT_FALSE(negligible({0}));
    EXPECT_THROW(make_monomial({2}, {}, 0, 0), std::invalid_argument);
    EXPECT_THROW(make_monomial({}, {-1}, 0, 0), std::invalid_argument);
}

TEST(Monomial, RAndS)
{
    Monomial m = make_monomial({0, 1, 0}, {0, 0, 2}, 0, 0);
    EXPECT_EQ(m.r(), 2);
    EXPECT_EQ(m.s(), 3);
    EXPECT_EQ(m.I.size(), 2u);
    EXPECT_EQ(make_monomial({}, {}, 0, 0).r(), kInfinity);
}

TEST(Monomial, TextRoundTrip)
{
    for (const char* s : {"1", "v1", "v1*phi(v2)^3*s^-4*b^2", "v1*v3*s^6", "phi(v1)*b"}) {
        Monomial m = parse_monomial(s);
        EXPECT_EQ(to_string(m), s);
    }
    EXPECT_THROW(parse_monomial("s^3"), std::invalid_argument);
    EXPECT_THROW(parse_monomial("v1^2"), std::invalid_argument);
}

TEST(Monomial, CatalogCoversByDimension)
{
    IJCatalog cat(3);
    cat.ensure(40);
    for (int id = 0; id < cat.size(); ++id) {
        const IJ& x = cat.at(id);
        EXPECT_EQ(x.deg, ij_degree(x.I, x.J, 3));
        EXPECT_EQ(x.u, underlying_dim(x.deg));
    }
    // v1 has u = 3, phi(v1) has u = 12
    EXPECT_GE(cat.find({1}, {}), 0);
    EXPECT_GE(cat.find({}, {1}), 0);
    const int before = cat.size();
    const int id = cat.find({1}, {});
    cat.ensure(80);
    EXPECT_GT(cat.size(), before);
    EXPECT_EQ(cat.find({1}, {}), id);
}
