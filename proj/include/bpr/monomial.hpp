#pragma once

#include "bpr/grading.hpp"

#include <climits>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace bpr {

enum class Scalar { Free, ModP };
enum class FamilyTag { Unit, EvenOddI, EvenEvenI, OddEvenI, OddOddI };

std::string family_name(FamilyTag f);

constexpr int kInfinity = INT_MAX;

// v_I Phi(v_J) sigma^{2l} b^k; I[i], J[i] are the exponents at index n = i+1
struct Monomial {
    std::vector<int> I;
    std::vector<int> J;
    i64 l = 0;
    i64 k = 0;

    int size_I() const;
    // least n with i_n != 0 (resp. j_n != 0), kInfinity if none
    int r() const;
    int s() const;
    int i_at(int n) const { return n >= 1 && n <= static_cast<int>(I.size()) ? I[n - 1] : 0; }
    int j_at(int n) const { return n >= 1 && n <= static_cast<int>(J.size()) ? J[n - 1] : 0; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// trims trailing zeros; rejects negligible I and negative J entries
Monomial make_monomial(std::vector<int> I, std::vector<int> J, i64 l, i64 k);

bool negligible(const std::vector<int>& I_raw);
Scalar coefficient_group(const std::vector<int>& I);
FamilyTag classify(const std::vector<int>& I, const std::vector<int>& J);
inline FamilyTag classify(const Monomial& m) { return classify(m.I, m.J); }

RDegree ij_degree(const std::vector<int>& I, const std::vector<int>& J, i64 p);
RDegree degree(const Monomial& m, i64 p);

// canonical text, e.g. "v1*phi(v2)^3*s^-4*b^2" (s^e is sigma^e, so e = 2l); the unit is "1"
std::string to_string(const Monomial& m);
std::string ij_label(const std::vector<int>& I, const std::vector<int>& J);
Monomial parse_monomial(const std::string& text);

struct IJ {
    std::vector<int> I, J;
    RDegree deg;
    i64 u = 0;
    int size_I = 0;
    int r = kInfinity, s = kInfinity;
};

// all non-negligible (I,J) up to a bound on underlying dimension; ids are stable as the bound grows
class IJCatalog {
public:
    explicit IJCatalog(i64 p);

    i64 prime() const { return p_; }
    void ensure(i64 u_bound);
    i64 covered() const { return covered_; }

    const IJ& at(int id) const { return items_[static_cast<std::size_t>(id)]; }
    int size() const { return static_cast<int>(items_.size()); }
    // ids with underlying dimension exactly u, sorted by (I,J)
    const std::vector<int>& with_u(i64 u);
    // -1 if absent (the bound is extended as needed)
    int find(const std::vector<int>& I, const std::vector<int>& J);

private:
    int insert(std::vector<int> I, std::vector<int> J);

    i64 p_;
    i64 covered_ = -1;
    std::vector<IJ> items_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index_;
    std::map<i64, std::vector<int>> by_u_;
};

} // namespace bpr
