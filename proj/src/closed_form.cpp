#include "bpr/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace bpr {

std::optional<FamilyDescriptor> family_descriptor(const std::vector<int>& I, const std::vector<int>& J, i64 p)
{
    require_odd_prime(p);
    const FamilyTag tag = classify(I, J);
    if (tag == FamilyTag::Unit) return std::nullopt;
    Monomial m = make_monomial(I, J, 0, 0);
    const int r = m.r(), s = m.s();
    FamilyDescriptor f;
    f.tag = tag;
    switch (tag) {
    case FamilyTag::EvenOddI:
        f.stride = ipow(p, r - 1);
        f.b_bound = ipow(p, r) - 1;
        f.excludes_minus_one = true;
        f.scalar = Scalar::ModP;
        break;
    case FamilyTag::EvenEvenI:
        f.stride = ipow(p, s);
        f.b_bound = checked_mul(ipow(p, s) - 1, p - 1) + 1;
        f.scalar = Scalar::Free;
        break;
    case FamilyTag::OddEvenI:
        f.stride = ipow(p, r - 1);
        f.b_bound = ipow(p, r);
        f.excludes_minus_one = true;
        f.scalar = Scalar::Free;
        break;
    case FamilyTag::OddOddI:
        f.stride = ipow(p, s);
        f.b_bound = checked_mul(ipow(p, s) - 1, p - 1);
        f.scalar = Scalar::ModP;
        break;
    case FamilyTag::Unit: break;
    }
    return f;
}

// A class with least generator index m lies at a >= 2p^{m-1}-1 when l >= 0, and at c >= p^{m-1} when l < 0,
// so m is capped by the window and so is every family bound.
i64 closed_form_b_bound(const Window& w, i64 p)
{
    require_odd_prime(p);
    const i64 x = std::max<i64>({1, (w.a1 + 1) / 2, w.c1});
    i64 pm = p; // p^M
    while (pm <= x) pm = checked_mul(pm, p);
    const i64 fam = std::max(pm, checked_mul(pm - 1, p - 1) + 1);
    return std::max(fam, std::max<i64>(0, -w.c0) + 1);
}

namespace {

bool minus_one(i64 l, i64 p) { return mod_floor(l, p) == p - 1; }

} // namespace

std::vector<ClosedFormClass> family_listing(const Window& w, i64 p)
{
    require_odd_prime(p);
    if (w.empty()) return {};
    std::vector<ClosedFormClass> out;

    for (i64 k = std::max<i64>(0, -w.c1); k <= -w.c0; ++k) {
        RDegree d{0, -k};
        if (!w.contains(d)) continue;
        out.push_back({make_monomial({}, {}, 0, k), FamilyTag::Unit, d, k == 0 ? GroupExpr{1, 0} : GroupExpr{0, 1}});
    }

    const i64 kb = closed_form_b_bound(w, p);
    IJCatalog cat(p);
    const i64 u_top = checked_add(w.u_max(), 2 * kb);
    cat.ensure(u_top);
    for (i64 u = 1; u <= u_top; ++u) {
        for (int id : cat.with_u(u)) {
            const IJ& ij = cat.at(id);
            auto f = family_descriptor(ij.I, ij.J, p);
            if (!f) continue;
            // a = A + 2*stride*l
            const i64 lo = -floor_div(-(w.a0 - ij.deg.a), 2 * f->stride);
            const i64 hi = floor_div(w.a1 - ij.deg.a, 2 * f->stride);
            for (i64 l = lo; l <= hi; ++l) {
                if (f->excludes_minus_one && minus_one(l, p)) continue;
                for (i64 k = 0; k < f->b_bound; ++k) {
                    RDegree d = ij.deg + checked_mul(f->stride, l) * RDegree{2, -1} + k * RDegree{0, -1};
                    if (d.c < w.c0) break;
                    if (!w.contains(d)) continue;
                    GroupExpr g = f->scalar == Scalar::Free && k == 0 ? GroupExpr{1, 0} : GroupExpr{0, 1};
                    out.push_back({make_monomial(ij.I, ij.J, checked_mul(f->stride, l), k), f->tag, d, g});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ClosedFormClass& x, const ClosedFormClass& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        return x.monomial < y.monomial;
    });
    return out;
}

GroupExpr closed_form_group(RDegree d, i64 p)
{
    GroupExpr g;
    for (const auto& c : family_listing(Window{d.a, d.a, d.c, d.c}, p)) g += c.group;
    return g;
}

std::map<RDegree, GroupExpr> closed_form_table(const Window& w, i64 p)
{
    std::map<RDegree, GroupExpr> t;
    for (const auto& c : family_listing(w, p)) t[c.degree] += c.group;
    return t;
}

} // namespace bpr
