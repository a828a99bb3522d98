#pragma once

#include "bpr/grading.hpp"
#include "bpr/lattice.hpp"
#include "bpr/mackey.hpp"
#include "bpr/monomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bpr {

// extra b-exponent added to each pattern's jump; all zero is the genuine rule (nonzero only for negative controls)
struct DifferentialRule {
    i64 first_even = 0, first_odd = 0, second_even = 0, second_odd = 0;

    bool is_standard() const { return first_even == 0 && first_odd == 0 && second_even == 0 && second_odd == 0; }
    // "first-even=1" etc.
    static DifferentialRule parse(const std::string& text);
};

enum class PatternMap { First, Second };

struct DifferentialRecord {
    Monomial source;
    Monomial target;
    i64 unit = 1;  // mod p
    i64 stage = 0; // b-exponent jump
    PatternMap map = PatternMap::First;
    int n = 0;
};

// the single effective differential (empty for permanent cycles)
std::vector<DifferentialRecord> differentials(const Monomial& m, i64 p, const DifferentialRule& rule = {});
// every monomial whose differential hits m; b-exponents may be negative only when allow_negative_b
std::vector<DifferentialRecord> incoming(const Monomial& m, i64 p, const DifferentialRule& rule = {},
                                         bool allow_negative_b = false);

struct PageEntry {
    std::vector<Monomial> basis;
    IntMatrix relations; // rows are relations among basis elements
};

struct PageTable {
    Window window;
    i64 p = 3;
    i64 b_cap = 0;
    std::map<RDegree, PageEntry> entries;
};

// all E^2 monomials with degree in the window and b-exponent <= b_cap
PageTable e2_page(const Window& w, i64 p, i64 b_cap, std::size_t max_basis = 5'000'000);

enum class Mode { Pattern, Snf };

struct EngineOptions {
    Mode mode = Mode::Snf;
    bool tate = false;
    i64 b_report = -1;  // reported b-exponent cap; -1 picks default_b_report
    i64 u_report = -1;  // Tate only: reported bound on u(v_I Phi(v_J)); -1 picks default_tate_u_report
    DifferentialRule rule;
    std::size_t max_nodes = 20'000'000;
};

i64 default_b_report(const Window& w, i64 p);
i64 default_tate_u_report(const Window& w, i64 p);

struct DegreeResult {
    RDegree degree;
    GroupExpr group;
    std::vector<std::string> basis_labels;
};

struct EngineStats {
    std::size_t nodes = 0, groups = 0, stages = 0, reported = 0;
};

struct EinftyTable {
    Window window;
    i64 p = 3;
    Mode mode = Mode::Snf;
    bool tate = false;
    i64 b_report = 0;
    i64 u_report = 0;
    std::map<RDegree, DegreeResult> entries; // nonzero degrees only
    std::vector<RDegree> edge_unreliable;
    EngineStats stats;

    GroupExpr at(RDegree d) const;
};

EinftyTable run_to_einfty(const Window& w, i64 p, const EngineOptions& options = {});
EinftyTable tate(const Window& w, i64 p, EngineOptions options = {});

} // namespace bpr
