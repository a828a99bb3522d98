#pragma once

#include "bpr/borel_ss.hpp"
#include "bpr/closed_form.hpp"
#include "bpr/mackey.hpp"
#include "bpr/monomial.hpp"
#include "bpr/mvfgl.hpp"
#include "bpr/tower.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace bpr {

using Json = nlohmann::json;

Json to_json(RDegree d);
Json to_json(const Monomial& m);
Json to_json(const GroupExpr& g);

// sorted keys, two-space indent, trailing LF
std::string dump(const Json& j);

struct Mismatch {
    RDegree degree;
    GroupExpr computed, expected;
};

std::vector<Mismatch> compare_tables(const Window& w, const EinftyTable& t, const std::map<RDegree, GroupExpr>& expected);
std::map<RDegree, GroupExpr> tate_expected(const Window& w);
Json diff_report(const std::string& against, const Window& w, const std::vector<Mismatch>& m);

Json einfty_json(const EinftyTable& t);
std::string einfty_csv(const EinftyTable& t);

Json coeff_json(const std::vector<ClosedFormClass>& listing, bool itemized);
std::string coeff_csv(const std::vector<ClosedFormClass>& listing);
std::string coeff_svg(const std::vector<ClosedFormClass>& listing, const Window& w, i64 p);

Json chart_json(const std::vector<ChartCell>& cells);
std::string chart_csv(const std::vector<ChartCell>& cells);
std::string chart_svg(const std::vector<ChartCell>& cells, const Window& w, i64 p, const std::string& title);

Json tower_json(const std::vector<TowerEntry>& entries, int n, i64 p, const std::string& pattern);
std::string tower_svg(const std::vector<TowerEntry>& entries, int n, i64 p, const std::string& pattern);

// rationals as numerator/denominator strings
Json theta_json(const MultiValuedFGL& m);

// write to a sibling temporary and rename over the target
void write_atomic(const std::string& path, const std::string& content);

} // namespace bpr
