#include "bpr/cyclotomic.hpp"

#include <stdexcept>

namespace bpr {

Cyclotomic::Cyclotomic(i64 p, const mpq_class& r) : p_(p), c_(static_cast<std::size_t>(p - 1))
{
    require_odd_prime(p);
    c_[0] = r;
}

Cyclotomic Cyclotomic::zeta_power(i64 p, i64 k)
{
    Cyclotomic z(p);
    const i64 e = mod_floor(k, p);
    if (e == p - 1) {
        // z^{p-1} = -(1 + z + ... + z^{p-2})
        for (auto& x : z.c_) x = -1;
    } else {
        z.c_[static_cast<std::size_t>(e)] = 1;
    }
    return z;
}

void Cyclotomic::check(const Cyclotomic& o) const
{
    if (p_ != o.p_) throw std::logic_error("cyclotomic fields differ");
}

bool Cyclotomic::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const mpq_class& r)
{
    for (auto& x : c_) x *= r;
    return *this;
}

Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y)
{
    x.check(y);
    const std::size_t p = static_cast<std::size_t>(x.p_);
    std::vector<mpq_class> acc(p);
    for (std::size_t i = 0; i + 1 < p; ++i) {
        if (x.c_[i] == 0) continue;
        for (std::size_t j = 0; j + 1 < p; ++j) {
            if (y.c_[j] == 0) continue;
            acc[(i + j) % p] += x.c_[i] * y.c_[j];
        }
    }
    Cyclotomic out(x.p_);
    for (std::size_t i = 0; i + 1 < p; ++i) out.c_[i] = acc[i] - acc[p - 1];
    return out;
}

std::string to_string(const Cyclotomic& z)
{
    std::string s;
    const auto& c = z.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += c[i].get_str();
        if (i == 1) s += "*z";
        if (i > 1) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

} // namespace bpr
