#include "bpr/tower.hpp"

#include <map>
#include <stdexcept>

namespace bpr {

std::string kind_name(CellKind k)
{
    switch (k) {
    case CellKind::ConstantZ: return "ConstantZ";
    case CellKind::Regular: return "Regular";
    case CellKind::ReducedTilde: return "ReducedTilde";
    case CellKind::CoconstantZ: return "CoconstantZ";
    case CellKind::ConstantModP: return "ConstantModP";
    case CellKind::ReducedTildeModP: return "ReducedTildeModP";
    case CellKind::HZSmashT: return "HZ^T";
    case CellKind::HX: return "HX";
    case CellKind::LTildeSmashT: return "HLtilde^T";
    }
    return "?";
}

std::string status_name(CellStatus s)
{
    switch (s) {
    case CellStatus::Survives: return "survives";
    case CellStatus::Source: return "source";
    case CellStatus::Target: return "target";
    case CellStatus::NegligibleSpawn: return "negligible-spawn";
    }
    return "?";
}

std::string kname(KName k, int n)
{
    const std::string sub = "_" + std::to_string(n);
    switch (k) {
    case KName::QPrime: return "Q'" + sub;
    case KName::QDoublePrime: return "Q''" + sub;
    case KName::QBar: return "Qbar" + sub;
    case KName::QDoubleBar: return "Qbarbar";
    }
    return "?";
}

std::optional<MackeyKind> mackey_kind(CellKind k)
{
    switch (k) {
    case CellKind::ConstantZ: return MackeyKind::ConstantZ;
    case CellKind::Regular: return MackeyKind::Regular;
    case CellKind::ReducedTilde: return MackeyKind::ReducedTilde;
    case CellKind::CoconstantZ: return MackeyKind::CoconstantZ;
    case CellKind::ConstantModP: return MackeyKind::ConstantModP;
    case CellKind::ReducedTildeModP: return MackeyKind::ReducedTildeModP;
    default: return std::nullopt;
    }
}

RDegree kinvariant_degree(int n, i64 p)
{
    if (n < 1) throw std::invalid_argument("k-invariant index must be >= 1");
    require_odd_prime(p);
    return generator_degree(Generator::V, n, p) + RDegree{0, 1};
}

RDegree class_degree(const TowerCell& c)
{
    switch (c.kind) {
    case CellKind::ReducedTilde:
    case CellKind::ReducedTildeModP: return c.degree + RDegree{1, -1};
    case CellKind::CoconstantZ: return c.degree + RDegree{2, -1};
    case CellKind::HZSmashT: return c.degree + RDegree{-1, 0};
    default: return c.degree;
    }
}

namespace {

struct Builder {
    std::vector<TowerEntry> out;
    int n;

    const TowerCell& cell(std::string label, CellKind kind, RDegree d, CellStatus st, int col)
    {
        out.push_back({TowerCell{std::move(label), kind, d, st, col}, std::nullopt});
        return out.back().cell;
    }
    // attaches an arrow to the most recent entry whose label is src
    void arrow(KName name, const std::string& src, const std::string& dst)
    {
        TowerEntry* s = nullptr;
        const TowerCell* t = nullptr;
        for (auto& e : out) {
            if (e.cell.label == src) s = &e;
            if (e.cell.label == dst) t = &e.cell;
        }
        if (!s || !t) throw std::logic_error("tower arrow between unknown cells");
        s->kinvariant = KInvariant{name, n, s->cell, *t, t->degree - s->cell.degree};
    }
};

std::string idx(const std::string& base, int n) { return base + "_" + std::to_string(n); }

std::string xi_power(int n, i64 k)
{
    std::string s = idx("xihat", n);
    if (k >= 1) s += "*" + idx("xi", n);
    if (k >= 2) s += "^" + std::to_string(k);
    return s;
}

void check_n(int n, i64 p)
{
    if (n < 1) throw std::invalid_argument("pattern index must be >= 1");
    require_odd_prime(p);
}

} // namespace

// ξ-monomials sit at multiples of S = |ξ_n|; each Q' lands kinvariant_degree higher
std::vector<TowerEntry> even_pattern(int n, i64 p)
{
    check_n(n, p);
    const RDegree vn = generator_degree(Generator::V, n, p);
    const RDegree S = vn + RDegree{1, 0};
    const RDegree kd = kinvariant_degree(n, p);
    const RDegree phi = generator_degree(Generator::Phi, n, p);
    Builder b{{}, n};
    const std::string v = idx("v", n), mu = idx("mu", n), theta = idx("theta", n);
    const std::string vv = v + "^2", ph = "phi(" + v + ")", bock = v + "*" + xi_power(n, p - 1);

    b.cell("1", CellKind::ConstantZ, {0, 0}, CellStatus::Survives, 0);
    b.cell(idx("xihat", n), CellKind::ReducedTilde, S + RDegree{-2, 1}, CellStatus::Survives, 0);
    for (i64 k = 1; k <= p - 2; ++k) b.cell(xi_power(n, k), CellKind::HZSmashT, (k + 1) * S, CellStatus::Source, 0);
    b.cell(mu, CellKind::ConstantModP, p * S, CellStatus::Source, 0);
    b.cell(theta, CellKind::ConstantZ, p * S - RDegree{1, 0}, CellStatus::Survives, 0);

    b.cell(v, CellKind::ReducedTilde, kd, CellStatus::Source, 1);
    for (i64 k = 1; k <= p - 2; ++k)
        b.cell("HX{" + xi_power(n, k) + "}", CellKind::HX, (k + 1) * S + kd, CellStatus::Target, 1);
    b.cell(bock, CellKind::LTildeSmashT, p * S + kd, CellStatus::Source, 1);

    b.cell(vv, CellKind::Regular, 2 * vn + RDegree{1, 0}, CellStatus::NegligibleSpawn, 2);
    b.cell(ph, CellKind::ConstantZ, phi + RDegree{1, 0}, CellStatus::Target, 2);

    b.arrow(KName::QPrime, "1", v);
    for (i64 k = 1; k <= p - 2; ++k) b.arrow(KName::QPrime, xi_power(n, k), "HX{" + xi_power(n, k) + "}");
    b.arrow(KName::QPrime, mu, bock);
    b.arrow(KName::QBar, v, vv);
    b.arrow(KName::QDoublePrime, bock, ph);
    return b.out;
}

// the even pattern smashed with the reduced piece of a higher v_m, degrees relative to v_m
std::vector<TowerEntry> odd_pattern(int n, i64 p)
{
    check_n(n, p);
    const RDegree vn = generator_degree(Generator::V, n, p);
    const RDegree S = vn + RDegree{1, 0};
    const RDegree kd = kinvariant_degree(n, p);
    const RDegree phi = generator_degree(Generator::Phi, n, p);
    Builder b{{}, n};
    const std::string v = idx("v", n), mu = idx("mu", n), theta = idx("theta", n);
    const std::string lp = "HL_p{" + v + "}", top = "HZ^T{" + mu + "}", ph = "v_m*phi(" + v + ")";
    auto hx = [&](i64 k) { return "HX{" + xi_power(n, k) + "}"; };
    auto tgt = [&](i64 k) { return k == 0 ? "HZ{" + v + "}" : "HZ^T{" + v + "*" + xi_power(n, k) + "}"; };

    b.cell("v_m", CellKind::ReducedTilde, {0, 0}, CellStatus::Survives, 0);
    for (i64 k = 0; k <= p - 2; ++k) b.cell(hx(k), CellKind::HX, (k + 1) * S, CellStatus::Source, 0);
    b.cell("HLtilde{" + idx("xihat", n) + "}", CellKind::ReducedTilde, S + RDegree{-2, 1}, CellStatus::Survives, 0);
    b.cell(mu, CellKind::ReducedTildeModP, p * S, CellStatus::Source, 0);
    b.cell(theta, CellKind::ReducedTilde, p * S - RDegree{1, 0}, CellStatus::Survives, 0);

    b.cell(lp, CellKind::Regular, kd, CellStatus::NegligibleSpawn, 1);
    b.cell(tgt(0), CellKind::ConstantZ, S + kd, CellStatus::Target, 1);
    for (i64 k = 1; k <= p - 2; ++k) b.cell(tgt(k), CellKind::HZSmashT, (k + 1) * S + kd, CellStatus::Target, 1);
    b.cell(top, CellKind::HZSmashT, p * S + kd, CellStatus::Source, 1);

    b.cell(ph, CellKind::ReducedTilde, phi + RDegree{0, 1}, CellStatus::Target, 2);

    b.arrow(KName::QDoubleBar, "v_m", lp);
    for (i64 k = 0; k <= p - 2; ++k) b.arrow(KName::QPrime, hx(k), tgt(k));
    b.arrow(KName::QPrime, mu, top);
    b.arrow(KName::QDoublePrime, top, ph);
    return b.out;
}

std::string check_tower(const std::vector<TowerEntry>& entries, int n, i64 p)
{
    std::map<std::string, TowerCell> cells;
    for (const auto& e : entries) {
        if (!cells.emplace(e.cell.label, e.cell).second) return "duplicate label " + e.cell.label;
    }
    for (const auto& e : entries) {
        if (e.cell.status == CellStatus::Source && !e.kinvariant) return "source without k-invariant: " + e.cell.label;
        if (!e.kinvariant) continue;
        const KInvariant& k = *e.kinvariant;
        if (!(k.source == e.cell)) return "k-invariant detached from its source: " + e.cell.label;
        auto it = cells.find(k.target.label);
        if (it == cells.end() || !(it->second == k.target)) return "k-invariant target missing: " + k.target.label;
        if (k.target.degree - k.source.degree != k.degree_shift) return "shift mismatch on " + kname(k.name, k.n);
        if (k.name == KName::QPrime && k.degree_shift != kinvariant_degree(n, p))
            return "Q' shift differs from kinvariant_degree at " + e.cell.label;
    }
    return "";
}

} // namespace bpr
