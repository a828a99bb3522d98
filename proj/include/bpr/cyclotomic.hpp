#pragma once

#include "bpr/grading.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bpr {

// element of Q(zeta_p) in the basis 1, z, ..., z^{p-2}
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(i64 p, const mpq_class& r = 0);

    static Cyclotomic zeta_power(i64 p, i64 k);

    i64 prime() const { return p_; }
    const std::vector<mpq_class>& coefficients() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    const mpq_class& rational_part() const { return c_.at(0); }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const mpq_class& r);
    friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { return x += y; }
    friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { return x -= y; }
    friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y);
    friend Cyclotomic operator*(Cyclotomic x, const mpq_class& r) { return x *= r; }
    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y) { return x.p_ == y.p_ && x.c_ == y.c_; }

private:
    void check(const Cyclotomic& o) const;

    i64 p_ = 0;
    std::vector<mpq_class> c_;
};

std::string to_string(const Cyclotomic& z);

} // namespace bpr
