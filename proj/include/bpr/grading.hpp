#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpr {

using i64 = std::int64_t;

// overflow is a bug in the caller's window sizing, never silently wrapped
inline i64 checked_add(i64 x, i64 y)
{
    i64 r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in add");
    return r;
}
inline i64 checked_mul(i64 x, i64 y)
{
    i64 r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in mul");
    return r;
}
i64 ipow(i64 base, int e);
// p-adic valuation; x != 0
int valuation(i64 x, i64 p);
i64 floor_div(i64 x, i64 y);
i64 mod_floor(i64 x, i64 m);

bool is_odd_prime(i64 p);
void require_odd_prime(i64 p);

// a + c*beta
struct RDegree {
    i64 a = 0;
    i64 c = 0;

    friend RDegree operator+(RDegree x, RDegree y) { return {checked_add(x.a, y.a), checked_add(x.c, y.c)}; }
    friend RDegree operator-(RDegree x, RDegree y) { return {checked_add(x.a, -y.a), checked_add(x.c, -y.c)}; }
    friend RDegree operator*(i64 k, RDegree x) { return {checked_mul(k, x.a), checked_mul(k, x.c)}; }
    RDegree& operator+=(RDegree y) { return *this = *this + y; }
    friend auto operator<=>(const RDegree&, const RDegree&) = default;
};

RDegree add(RDegree d1, RDegree d2);
// beta is 2-dimensional on underlying spectra
i64 underlying_dim(RDegree d);
std::string to_string(RDegree d);

enum class Generator { V, Phi, B, SigmaSquared, V0Sigma };

RDegree generator_degree(Generator g, int n, i64 p);
// I[i] is the exponent of v_{i+1}
RDegree vI_degree(const std::vector<int>& I, i64 p);

// closed box [a0,a1] x [c0,c1]
struct Window {
    i64 a0 = 0, a1 = 0, c0 = 0, c1 = 0;

    bool contains(RDegree d) const { return d.a >= a0 && d.a <= a1 && d.c >= c0 && d.c <= c1; }
    bool empty() const { return a0 > a1 || c0 > c1; }
    std::vector<RDegree> degrees() const;
    i64 u_min() const { return a0 + 2 * c0; }
    i64 u_max() const { return a1 + 2 * c1; }

    // "A0..A1,C0..C1"
    static Window parse(const std::string& text);
};

} // namespace bpr
