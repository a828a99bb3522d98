#pragma once

#include "bpr/grading.hpp"

#include <string>
#include <vector>

namespace bpr {

enum class MackeyKind { ConstantZ, Regular, ReducedTilde, CoconstantZ, ConstantModP, ReducedTildeModP };

const std::vector<MackeyKind>& all_mackey_kinds();
std::string kind_name(MackeyKind k);
MackeyKind parse_kind(const std::string& name);

// copies of Z_(p) and Z/p
struct GroupExpr {
    i64 free_rank = 0;
    i64 modp_rank = 0;

    bool is_zero() const { return free_rank == 0 && modp_rank == 0; }
    GroupExpr& operator+=(const GroupExpr& o)
    {
        free_rank += o.free_rank;
        modp_rank += o.modp_rank;
        return *this;
    }
    friend GroupExpr operator+(GroupExpr x, const GroupExpr& y) { return x += y; }
    friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

std::string to_string(const GroupExpr& g, i64 p);

struct SESRecord {
    MackeyKind sub, mid, quot;
};
const std::vector<SESRecord>& ses_records();

GroupExpr em_coefficients(MackeyKind kind, RDegree d, i64 p);

struct BoxSummand {
    RDegree shift;
    MackeyKind kind;
    i64 multiplicity;
};
// reduced tilde box reduced tilde
std::vector<BoxSummand> box_decomposition(i64 p);

enum class Glyph { Square, Dot };

struct ChartCell {
    RDegree degree;
    Glyph glyph;
    GroupExpr group;
};

// nonzero cells, sorted by (c, a)
std::vector<ChartCell> chart(MackeyKind kind, const Window& w, i64 p);

} // namespace bpr
