#include "bpr/grading.hpp"

#include <regex>

namespace bpr {

i64 ipow(i64 base, int e)
{
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

int valuation(i64 x, i64 p)
{
    if (x == 0) throw std::invalid_argument("valuation of 0");
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i64 floor_div(i64 x, i64 y)
{
    i64 q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

i64 mod_floor(i64 x, i64 m)
{
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

bool is_odd_prime(i64 p)
{
    if (p < 3 || p % 2 == 0) return false;
    for (i64 q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

void require_odd_prime(i64 p)
{
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

RDegree add(RDegree d1, RDegree d2) { return d1 + d2; }

i64 underlying_dim(RDegree d) { return checked_add(d.a, checked_mul(2, d.c)); }

std::string to_string(RDegree d) { return "(" + std::to_string(d.a) + "," + std::to_string(d.c) + ")"; }

RDegree generator_degree(Generator g, int n, i64 p)
{
    require_odd_prime(p);
    switch (g) {
    case Generator::V:
        if (n < 1) throw std::invalid_argument("v_n needs n >= 1");
        return {2 * ipow(p, n - 1) - 1, ipow(p, n) - ipow(p, n - 1) - 1};
    case Generator::Phi:
        if (n < 1) throw std::invalid_argument("Phi(v_n) needs n >= 1");
        return {2 * ipow(p, n) - 2, checked_mul(ipow(p, n) - 1, p - 1)};
    case Generator::B:
        return {0, -1};
    case Generator::SigmaSquared:
        return {2, -1};
    case Generator::V0Sigma:
        return {1, -1};
    }
    throw std::logic_error("unknown generator");
}

RDegree vI_degree(const std::vector<int>& I, i64 p)
{
    require_odd_prime(p);
    RDegree d;
    i64 size = 0;
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] == 0) continue;
        if (I[i] != 1) throw std::invalid_argument("vI_degree: exponents must be 0 or 1 (v_n^2 is negligible)");
        int n = static_cast<int>(i) + 1;
        d.a = checked_add(d.a, 2 * ipow(p, n - 1) - 1);
        d.c = checked_add(d.c, ipow(p, n) - ipow(p, n - 1));
        ++size;
    }
    d.c -= (size + 1) / 2;
    return d;
}

std::vector<RDegree> Window::degrees() const
{
    std::vector<RDegree> out;
    for (i64 c = c0; c <= c1; ++c)
        for (i64 a = a0; a <= a1; ++a) out.push_back({a, c});
    return out;
}

Window Window::parse(const std::string& text)
{
    static const std::regex re(R"(\s*(-?\d+)\.\.(-?\d+)\s*,\s*(-?\d+)\.\.(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("window must look like A0..A1,C0..C1: " + text);
    Window w{std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]), std::stoll(m[4])};
    if (w.empty()) throw std::invalid_argument("empty window: " + text);
    return w;
}

} // namespace bpr
