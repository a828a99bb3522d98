#pragma once

#include "bpr/cyclotomic.hpp"
#include "bpr/grading.hpp"
#include "bpr/series.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bpr {

using QSeries = MvSeries<mpq_class>;
using CSeries = MvSeries<Cyclotomic>;

// log_F(x) = x + sum_{i>=1} m_i x^{i+1}
struct FGL {
    std::string name;
    std::vector<mpq_class> log_coefficients; // m_1, m_2, ...

    mpq_class m(int i) const;

    static FGL additive();
    static FGL multiplicative(int order);
    // "additive", "multiplicative" or "log:m1,m2,..." with rational entries like 1/3
    static FGL parse(const std::string& spec, int order);
};

QSeries log_series(const FGL& f, int order);
// compositional inverse of log_F in one variable
QSeries exp_from_log(const FGL& f, int order);

struct MultiValuedFGL {
    i64 p = 3;
    int order = 0;
    std::string fgl;
    std::vector<QSeries> theta; // theta[i-1] = theta_i(x, y)
    bool zeta_free_verified = false;
};

// throws std::runtime_error if a symmetric function keeps a zeta or fails the s, t -> zeta s, zeta t invariance
MultiValuedFGL build_theta(const FGL& f, i64 p, int order);

bool verify_unit(const MultiValuedFGL& m);
bool verify_commutativity(const MultiValuedFGL& m);

// elementary symmetric coefficients e_1..e_{p^2} (in x, y, z) of the degree-p^2 polynomial in Z
// variant 0: Res_W(Theta(y,z)(W), Theta(x,W)(Z)); variant 1: Res_W(Theta(x,y)(W), Theta(z,W)(Z))
std::vector<QSeries> resultant_route(const MultiValuedFGL& m, int variant);
// the same coefficients from prod_{j,k} (Z - F_jk(x,y,z))
std::vector<QSeries> direct_route(const FGL& f, i64 p, int order);

struct AssociativityReport {
    bool ok = false;
    bool sides_agree = false;
    bool direct_agrees = false;
    std::size_t terms_compared = 0;
    std::string detail;
};

AssociativityReport verify_associativity(const MultiValuedFGL& m, const FGL& f, int order);

} // namespace bpr
