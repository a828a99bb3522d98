#pragma once

#include "bpr/grading.hpp"
#include "bpr/mackey.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bpr {

// the six Eilenberg-MacLane kinds plus formal composite pieces
enum class CellKind { ConstantZ, Regular, ReducedTilde, CoconstantZ, ConstantModP, ReducedTildeModP, HZSmashT, HX, LTildeSmashT };
enum class CellStatus { Survives, Source, Target, NegligibleSpawn };
enum class KName { QPrime, QDoublePrime, QBar, QDoubleBar };

std::string kind_name(CellKind k);
std::string status_name(CellStatus s);
std::string kname(KName k, int n);
std::optional<MackeyKind> mackey_kind(CellKind k);

struct TowerCell {
    std::string label;
    CellKind kind = CellKind::ConstantZ;
    RDegree degree; // suspension of the piece
    CellStatus status = CellStatus::Survives;
    int column = 0;

    friend bool operator==(const TowerCell&, const TowerCell&) = default;
};

struct KInvariant {
    KName name = KName::QPrime;
    int n = 1;
    TowerCell source, target;
    RDegree degree_shift;
};

struct TowerEntry {
    TowerCell cell;
    std::optional<KInvariant> kinvariant; // outgoing from cell
};

RDegree kinvariant_degree(int n, i64 p);
// R-degree of the bottom homotopy class of a piece: suspension plus the corner of its kind
RDegree class_degree(const TowerCell& c);

std::vector<TowerEntry> even_pattern(int n, i64 p);
std::vector<TowerEntry> odd_pattern(int n, i64 p);

// "" if consistent, otherwise the first violation found
std::string check_tower(const std::vector<TowerEntry>& entries, int n, i64 p);

} // namespace bpr
