#include "bpr/mackey.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bpr {

namespace {

// kernel of p on Z^f + (Z/p)^t is (Z/p)^t; cokernel is (Z/p)^(f+t)
GroupExpr mod_p_reduction(MackeyKind integral, RDegree d, i64 p)
{
    GroupExpr here = em_coefficients(integral, d, p);
    GroupExpr below = em_coefficients(integral, d - RDegree{1, 0}, p);
    return {0, here.free_rank + here.modp_rank + below.modp_rank};
}

MackeyKind integral_lift(MackeyKind k)
{
    return k == MackeyKind::ConstantModP ? MackeyKind::ConstantZ : MackeyKind::ReducedTilde;
}

// closed-form solutions of the inequalities, one row at a time
void constant_z_row(i64 c, const Window& w, std::set<RDegree>& out)
{
    auto put = [&](i64 a) {
        if (a >= w.a0 && a <= w.a1) out.insert({a, c});
    };
    put(-2 * c);
    if (c <= -1) {
        for (i64 a = std::max<i64>(0, w.a0 + (w.a0 & 1)); a <= std::min(-2 * c - 2, w.a1); a += 2) put(a);
    } else if (c >= 2) {
        i64 lo = -(2 * c - 1), hi = -3;
        i64 start = std::max(lo, w.a0);
        if ((start & 1) == 0) ++start;
        for (i64 a = start; a <= std::min(hi, w.a1); a += 2) put(a);
    }
}

void reduced_tilde_row(i64 c, const Window& w, std::set<RDegree>& out)
{
    auto put = [&](i64 a) {
        if (a >= w.a0 && a <= w.a1) out.insert({a, c});
    };
    if (c <= -1) {
        i64 start = std::max<i64>(1, w.a0);
        if ((start & 1) == 0) ++start;
        for (i64 a = start; a <= std::min(-2 * c - 1, w.a1); a += 2) put(a);
    } else if (c >= 1) {
        i64 start = std::max(-2 * c, w.a0);
        if (start & 1) ++start;
        for (i64 a = start; a <= std::min<i64>(-2, w.a1); a += 2) put(a);
    }
}

} // namespace

const std::vector<MackeyKind>& all_mackey_kinds()
{
    static const std::vector<MackeyKind> kinds{MackeyKind::ConstantZ,   MackeyKind::Regular,      MackeyKind::ReducedTilde,
                                               MackeyKind::CoconstantZ, MackeyKind::ConstantModP, MackeyKind::ReducedTildeModP};
    return kinds;
}

std::string kind_name(MackeyKind k)
{
    switch (k) {
    case MackeyKind::ConstantZ: return "ConstantZ";
    case MackeyKind::Regular: return "Regular";
    case MackeyKind::ReducedTilde: return "ReducedTilde";
    case MackeyKind::CoconstantZ: return "CoconstantZ";
    case MackeyKind::ConstantModP: return "ConstantModP";
    case MackeyKind::ReducedTildeModP: return "ReducedTildeModP";
    }
    throw std::logic_error("unknown MackeyKind");
}

MackeyKind parse_kind(const std::string& name)
{
    for (MackeyKind k : all_mackey_kinds())
        if (kind_name(k) == name) return k;
    throw std::invalid_argument("unknown Mackey kind: " + name);
}

std::string to_string(const GroupExpr& g, i64 p)
{
    if (g.is_zero()) return "0";
    std::string s;
    auto term = [&](const std::string& base, i64 r) {
        if (r == 0) return;
        if (!s.empty()) s += " + ";
        s += base;
        if (r > 1) s += "^" + std::to_string(r);
    };
    term("Z_(" + std::to_string(p) + ")", g.free_rank);
    term("Z/" + std::to_string(p), g.modp_rank);
    return s;
}

const std::vector<SESRecord>& ses_records()
{
    static const std::vector<SESRecord> recs{
        {MackeyKind::ConstantZ, MackeyKind::Regular, MackeyKind::ReducedTilde},
        {MackeyKind::ReducedTilde, MackeyKind::Regular, MackeyKind::CoconstantZ},
    };
    return recs;
}

GroupExpr em_coefficients(MackeyKind kind, RDegree d, i64 p)
{
    require_odd_prime(p);
    const i64 a = d.a, c = d.c;
    switch (kind) {
    case MackeyKind::ConstantZ:
        if (a == -2 * c) return {1, 0};
        // good wedge: (2k, -l), 0 <= k < l
        if (a >= 0 && a % 2 == 0 && a / 2 < -c) return {0, 1};
        // derived wedge: (-1-2k, l), 1 <= k < l
        if (a <= -3 && (-a) % 2 == 1 && (-1 - a) / 2 < c) return {0, 1};
        return {};
    case MackeyKind::ReducedTilde:
        // good wedge: (2k+1, -l), 0 <= k < l
        if (a >= 1 && a % 2 == 1 && (a - 1) / 2 < -c) return {0, 1};
        // derived wedge: (-2k, l), 0 < k <= l
        if (a <= -2 && (-a) % 2 == 0 && (-a) / 2 <= c) return {0, 1};
        return {};
    case MackeyKind::CoconstantZ:
        return em_coefficients(MackeyKind::ConstantZ, d - generator_degree(Generator::SigmaSquared, 0, p), p);
    case MackeyKind::Regular:
        return a + 2 * c == 0 ? GroupExpr{1, 0} : GroupExpr{};
    case MackeyKind::ConstantModP:
    case MackeyKind::ReducedTildeModP:
        return mod_p_reduction(integral_lift(kind), d, p);
    }
    throw std::logic_error("unknown MackeyKind");
}

std::vector<BoxSummand> box_decomposition(i64 p)
{
    require_odd_prime(p);
    return {{{0, 0}, MackeyKind::CoconstantZ, 1}, {{0, 0}, MackeyKind::Regular, p - 2}};
}

std::vector<ChartCell> chart(MackeyKind kind, const Window& w, i64 p)
{
    require_odd_prime(p);
    std::set<RDegree> support;
    auto integral_rows = [&](MackeyKind k, const Window& win) {
        for (i64 c = win.c0; c <= win.c1; ++c) {
            if (k == MackeyKind::ConstantZ) constant_z_row(c, win, support);
            else reduced_tilde_row(c, win, support);
        }
    };
    switch (kind) {
    case MackeyKind::ConstantZ:
    case MackeyKind::ReducedTilde:
        integral_rows(kind, w);
        break;
    case MackeyKind::CoconstantZ: {
        std::set<RDegree> shifted;
        integral_rows(MackeyKind::ConstantZ, {w.a0 - 2, w.a1 - 2, w.c0 + 1, w.c1 + 1});
        for (RDegree d : support) shifted.insert(d + RDegree{2, -1});
        support.swap(shifted);
        break;
    }
    case MackeyKind::Regular:
        for (i64 c = w.c0; c <= w.c1; ++c)
            if (w.contains({-2 * c, c})) support.insert({-2 * c, c});
        break;
    case MackeyKind::ConstantModP:
    case MackeyKind::ReducedTildeModP: {
        // support of d and of d-(1,0) in the integral chart
        integral_rows(integral_lift(kind), {w.a0 - 1, w.a1, w.c0, w.c1});
        std::set<RDegree> both;
        for (RDegree d : support) {
            if (w.contains(d)) both.insert(d);
            if (w.contains(d + RDegree{1, 0})) both.insert(d + RDegree{1, 0});
        }
        support.swap(both);
        break;
    }
    }
    std::vector<ChartCell> out;
    for (RDegree d : support) {
        GroupExpr g = em_coefficients(kind, d, p);
        if (g.is_zero()) continue;
        out.push_back({d, g.free_rank > 0 ? Glyph::Square : Glyph::Dot, g});
    }
    std::sort(out.begin(), out.end(), [](const ChartCell& x, const ChartCell& y) {
        return x.degree.c != y.degree.c ? x.degree.c < y.degree.c : x.degree.a < y.degree.a;
    });
    return out;
}

} // namespace bpr
