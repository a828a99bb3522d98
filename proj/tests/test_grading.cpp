#include "bpr/grading.hpp"

#include <gtest/gtest.h>

using namespace bpr;

TEST(Grading, AddIsComponentwise)
{
    EXPECT_EQ(add({0, 0}, {3, -1}), (RDegree{3, -1}));
    EXPECT_EQ(add({1, 1}, {4, 4}), (RDegree{5, 5}));
    EXPECT_EQ(add({2, -1}, {-2, 1}), (RDegree{0, 0}));
}

TEST(Grading, UnderlyingDimension)
{
    EXPECT_EQ(underlying_dim({1, 1}), 3);
    EXPECT_EQ(underlying_dim({0, -1}), -2);
    // |v_n| - 1 = 2p^n - 3
    for (i64 p : {3, 5, 7})
        for (int n = 1; n <= 4; ++n)
            EXPECT_EQ(underlying_dim(generator_degree(Generator::V, n, p)), 2 * ipow(p, n) - 3);
}

TEST(Grading, GeneratorDegrees)
{
    EXPECT_EQ(generator_degree(Generator::V, 1, 3), (RDegree{1, 1}));
    EXPECT_EQ(generator_degree(Generator::Phi, 1, 3), (RDegree{4, 4}));
    EXPECT_EQ(generator_degree(Generator::B, 0, 3), (RDegree{0, -1}));
    EXPECT_EQ(generator_degree(Generator::SigmaSquared, 0, 3), (RDegree{2, -1}));
    EXPECT_THROW(generator_degree(Generator::V, 0, 3), std::invalid_argument);
    EXPECT_THROW(generator_degree(Generator::V, 1, 4), std::invalid_argument);
}

TEST(Grading, VIDegree)
{
    EXPECT_EQ(vI_degree({1}, 3), (RDegree{1, 1}));
    EXPECT_EQ(vI_degree({1, 1}, 3), (RDegree{6, 7}));
    EXPECT_EQ(vI_degree({}, 3), (RDegree{0, 0}));
}

// b and sigma^2 are pinned by both differentials dropping underlying dimension by one
TEST(Grading, DifferentialsDropUnderlyingDimension)
{
    const RDegree b = generator_degree(Generator::B, 0, 3);
    const RDegree s2 = generator_degree(Generator::SigmaSquared, 0, 3);
    for (i64 p : {3, 5, 7}) {
        for (int n = 1; n <= 4; ++n) {
            const i64 pn = ipow(p, n), pn1 = ipow(p, n - 1);
            RDegree v = generator_degree(Generator::V, n, p), phi = generator_degree(Generator::Phi, n, p);
            EXPECT_EQ(underlying_dim((-pn1) * s2) - underlying_dim(v + (pn - 1) * b), 1);
            EXPECT_EQ(underlying_dim(v + (-(p - 1) * pn1) * s2) - underlying_dim(phi + ((pn - 1) * (p - 1) + 1) * b), 1);
        }
    }
}

TEST(Grading, Arithmetic)
{
    EXPECT_EQ(valuation(18, 3), 2);
    EXPECT_EQ(valuation(-5, 5), 1);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(mod_floor(-7, 3), 2);
    EXPECT_THROW(checked_mul(INT64_MAX, 2), std::overflow_error);
    EXPECT_TRUE(is_odd_prime(7));
    EXPECT_FALSE(is_odd_prime(2));
    EXPECT_FALSE(is_odd_prime(9));
}

TEST(Grading, WindowParse)
{
    Window w = Window::parse("-20..20,-10..10");
    EXPECT_EQ(w.a0, -20);
    EXPECT_EQ(w.c1, 10);
    EXPECT_EQ(w.degrees().size(), 41u * 21u);
    EXPECT_THROW(Window::parse("1..0,0..0"), std::invalid_argument);
    EXPECT_THROW(Window::parse("garbage"), std::invalid_argument);
}
