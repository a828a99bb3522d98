#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bpr {

constexpr std::size_t kMaxSeriesVars = 4;
using Exponent = std::array<int, kMaxSeriesVars>;

inline int total_degree(const Exponent& e)
{
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// sparse power series in up to four variables, truncated at total degree `order`
template <class T>
class MvSeries {
public:
    MvSeries() = default;
    MvSeries(std::vector<std::string> vars, int order, T zero)
        : vars_(std::move(vars)), order_(order), zero_(std::move(zero))
    {
        if (vars_.size() > kMaxSeriesVars) throw std::invalid_argument("too many series variables");
        if (order_ < 0) throw std::invalid_argument("negative truncation order");
    }

    const std::vector<std::string>& variables() const { return vars_; }
    int order() const { return order_; }
    const T& zero() const { return zero_; }
    const std::map<Exponent, T>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MvSeries like() const { return MvSeries(vars_, order_, zero_); }

    T coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? zero_ : it->second;
    }

    void add_term(const Exponent& e, const T& c)
    {
        if (total_degree(e) > order_) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!(c == zero_)) terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second == zero_) terms_.erase(it);
    }

    MvSeries& operator+=(const MvSeries& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MvSeries& operator-=(const MvSeries& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, zero_ - c);
        return *this;
    }
    template <class S>
    MvSeries& scale(const S& s)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second = it->second * s;
            if (it->second == zero_) it = terms_.erase(it);
            else ++it;
        }
        return *this;
    }

    friend MvSeries operator+(MvSeries x, const MvSeries& y) { return x += y; }
    friend MvSeries operator-(MvSeries x, const MvSeries& y) { return x -= y; }

    friend MvSeries operator*(const MvSeries& x, const MvSeries& y)
    {
        MvSeries out = x.like();
        std::map<int, std::vector<const std::pair<const Exponent, T>*>> ybydeg;
        for (const auto& t : y.terms_) ybydeg[total_degree(t.first)].push_back(&t);
        for (const auto& [ex, cx] : x.terms_) {
            const int dx = total_degree(ex);
            for (const auto& [dy, list] : ybydeg) {
                if (dx + dy > out.order_) break;
                for (const auto* t : list) {
                    Exponent e;
                    for (std::size_t i = 0; i < kMaxSeriesVars; ++i) e[i] = ex[i] + t->first[i];
                    out.add_term(e, cx * t->second);
                }
            }
        }
        return out;
    }

    friend bool operator==(const MvSeries& x, const MvSeries& y) { return x.terms_ == y.terms_; }

    // rename variable positions: new exponent[perm[i]] = old exponent[i]
    MvSeries permuted(const std::vector<std::size_t>& perm, std::vector<std::string> vars) const
    {
        MvSeries out(std::move(vars), order_, zero_);
        for (const auto& [e, c] : terms_) {
            Exponent f{};
            for (std::size_t i = 0; i < perm.size(); ++i) f[perm[i]] += e[i];
            out.add_term(f, c);
        }
        return out;
    }

    // drop every term involving variable i
    MvSeries at_zero(std::size_t i) const
    {
        MvSeries out = like();
        for (const auto& [e, c] : terms_)
            if (e[i] == 0) out.terms_.emplace(e, c);
        return out;
    }

private:
    std::vector<std::string> vars_;
    int order_ = 0;
    T zero_{};
    std::map<Exponent, T> terms_;
};

// x^n truncated
template <class T>
MvSeries<T> power(const MvSeries<T>& x, int n, const T& one)
{
    MvSeries<T> r = x.like();
    r.add_term(Exponent{}, one);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

} // namespace bpr
