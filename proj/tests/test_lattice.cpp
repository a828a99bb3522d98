#include "bpr/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bpr;

namespace {

IntMatrix random_matrix(std::mt19937& g, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(g);
    return m;
}

bool unimodular(const IntMatrix& u)
{
    IntMatrix h = hnf(u);
    return h == IntMatrix::identity(u.rows());
}

} // namespace

TEST(Lattice, SmithOnRandomMatrices)
{
    std::mt19937 g(12345);
    for (int t = 0; t < 200; ++t) {
        IntMatrix a = random_matrix(g, 1 + t % 5, 1 + (t / 5) % 5, -6, 6);
        SmithForm s = smith(a);
        IntMatrix d = s.U * a * s.V;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) {
                i64 want = (i == j && i < s.diagonal.size()) ? s.diagonal[i] : 0;
                EXPECT_EQ(d(i, j), want);
            }
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
        for (i64 x : s.diagonal) EXPECT_GT(x, 0);
        EXPECT_TRUE(unimodular(s.U));
        EXPECT_EQ(s.V * s.Vinv, IntMatrix::identity(a.cols()));
    }
}

TEST(Lattice, LeftKernelAnnihilates)
{
    std::mt19937 g(7);
    for (int t = 0; t < 100; ++t) {
        IntMatrix a = random_matrix(g, 2 + t % 4, 1 + t % 3, -3, 3);
        IntMatrix k = left_kernel(a);
        EXPECT_TRUE((k * a).is_zero());
        // rank-nullity over Q
        EXPECT_EQ(k.rows() + smith(a).diagonal.size(), a.rows());
    }
}

TEST(Lattice, SumAndIntersection)
{
    std::mt19937 g(99);
    for (int t = 0; t < 100; ++t) {
        Lattice x = Lattice::from_generators(random_matrix(g, 2, 3, -3, 3), 9);
        Lattice y = Lattice::from_generators(random_matrix(g, 2, 3, -3, 3), 9);
        Lattice s = x + y, i = x.intersect(y);
        EXPECT_TRUE(s.contains(x));
        EXPECT_TRUE(s.contains(y));
        EXPECT_TRUE(x.contains(i));
        EXPECT_TRUE(y.contains(i));
        EXPECT_TRUE(i.contains(std::vector<i64>{9, 0, 0}));
    }
}

TEST(Lattice, PreimageIsExact)
{
    std::mt19937 g(3);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int t = 0; t < 60; ++t) {
        IntMatrix d = random_matrix(g, 3, 2, -2, 2);
        Lattice target = Lattice::from_generators(random_matrix(g, 1, 2, -2, 2), 3);
        Lattice pre = Lattice::full(3, 3).preimage(d, target);
        for (int s = 0; s < 40; ++s) {
            std::vector<i64> z{coord(g), coord(g), coord(g)};
            std::vector<i64> img(2, 0);
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 3; ++i) img[j] += z[i] * d(i, j);
            EXPECT_EQ(pre.contains(z), target.contains(img));
        }
    }
}

TEST(Lattice, LocalQuotient)
{
    // Z^2 / (3Z + 0) localized at 3 is Z/3 + Z
    Lattice full = Lattice::full(2, 0);
    Lattice sub = Lattice::from_generators(IntMatrix::from_rows({{3, 0}}, 2), 0);
    LocalQuotient q = local_quotient(full, sub, 3);
    EXPECT_EQ(q.free_rank, 1);
    EXPECT_EQ(q.modp_rank, 1);
    // units away from p vanish
    Lattice five = Lattice::from_generators(IntMatrix::from_rows({{5, 0}, {0, 1}}, 2), 0);
    EXPECT_EQ(local_quotient(full, five, 3).modp_rank, 0);
    Lattice nine = Lattice::from_generators(IntMatrix::from_rows({{9, 0}}, 2), 0);
    EXPECT_THROW(local_quotient(full, nine, 3), std::runtime_error);
}

TEST(Lattice, UnitPartDropsTransfers)
{
    Lattice z = Lattice::from_generators(IntMatrix::from_rows({{1, 1}, {0, 3}}, 2), 0);
    EXPECT_EQ(unit_part(z, 3).free_rank, 1);
    EXPECT_EQ(unit_part(Lattice::full(3, 0), 3).free_rank, 3);
}
