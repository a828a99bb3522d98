#pragma once

#include "bpr/grading.hpp"
#include "bpr/mackey.hpp"
#include "bpr/monomial.hpp"

#include <map>
#include <optional>
#include <vector>

namespace bpr {

struct FamilyDescriptor {
    FamilyTag tag = FamilyTag::Unit;
    i64 stride = 1;           // sigma^2 exponent is stride * l
    i64 b_bound = 0;          // b-exponents 0 <= k < b_bound
    bool excludes_minus_one = false; // l = -1 mod p omitted
    Scalar scalar = Scalar::ModP;    // Free means Z_(p) at k = 0 and pb = 0
};

// descriptor of the (I,J) family; the unit family (I = J = 0) has none
std::optional<FamilyDescriptor> family_descriptor(const std::vector<int>& I, const std::vector<int>& J, i64 p);

struct ClosedFormClass {
    Monomial monomial;
    FamilyTag family;
    RDegree degree;
    GroupExpr group;
};

// largest b-exponent any class in the window can carry, plus one
i64 closed_form_b_bound(const Window& w, i64 p);

// every class of the closed form whose degree lies in the window, sorted by (degree, monomial)
std::vector<ClosedFormClass> family_listing(const Window& w, i64 p);

GroupExpr closed_form_group(RDegree d, i64 p);
// nonzero degrees only
std::map<RDegree, GroupExpr> closed_form_table(const Window& w, i64 p);

} // namespace bpr
