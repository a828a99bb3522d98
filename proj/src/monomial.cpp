#include "bpr/monomial.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

namespace bpr {

namespace {

void trim(std::vector<int>& v)
{
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int least_index(const std::vector<int>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return static_cast<int>(i) + 1;
    return kInfinity;
}

} // namespace

std::string family_name(FamilyTag f)
{
    switch (f) {
    case FamilyTag::Unit: return "Unit";
    case FamilyTag::EvenOddI: return "EvenOddI";
    case FamilyTag::EvenEvenI: return "EvenEvenI";
    case FamilyTag::OddEvenI: return "OddEvenI";
    case FamilyTag::OddOddI: return "OddOddI";
    }
    throw std::logic_error("unknown family");
}

int Monomial::size_I() const { return static_cast<int>(std::count(I.begin(), I.end(), 1)); }
int Monomial::r() const { return least_index(I); }
int Monomial::s() const { return least_index(J); }

Monomial make_monomial(std::vector<int> I, std::vector<int> J, i64 l, i64 k)
{
    if (negligible(I)) throw std::invalid_argument("negligible monomial: some v_n has exponent >= 2");
    for (int x : I)
        if (x < 0) throw std::invalid_argument("negative v_n exponent");
    for (int x : J)
        if (x < 0) throw std::invalid_argument("negative Phi(v_n) exponent");
    trim(I);
    trim(J);
    return {std::move(I), std::move(J), l, k};
}

bool negligible(const std::vector<int>& I_raw)
{
    return std::any_of(I_raw.begin(), I_raw.end(), [](int x) { return x >= 2; });
}

Scalar coefficient_group(const std::vector<int>& I)
{
    int size = static_cast<int>(std::count(I.begin(), I.end(), 1));
    return size % 2 == 0 ? Scalar::Free : Scalar::ModP;
}

FamilyTag classify(const std::vector<int>& I, const std::vector<int>& J)
{
    const int size = static_cast<int>(std::count(I.begin(), I.end(), 1));
    const int r = least_index(I), s = least_index(J);
    if (r == kInfinity && s == kInfinity) return FamilyTag::Unit;
    if (size % 2 == 1) return r <= s ? FamilyTag::EvenOddI : FamilyTag::OddOddI;
    return r > s ? FamilyTag::EvenEvenI : FamilyTag::OddEvenI;
}

RDegree ij_degree(const std::vector<int>& I, const std::vector<int>& J, i64 p)
{
    RDegree d = vI_degree(I, p);
    for (std::size_t i = 0; i < J.size(); ++i)
        if (J[i] != 0) d += static_cast<i64>(J[i]) * generator_degree(Generator::Phi, static_cast<int>(i) + 1, p);
    return d;
}

RDegree degree(const Monomial& m, i64 p)
{
    return ij_degree(m.I, m.J, p) + m.l * generator_degree(Generator::SigmaSquared, 0, p) +
           m.k * generator_degree(Generator::B, 0, p);
}

std::string ij_label(const std::vector<int>& I, const std::vector<int>& J)
{
    std::string s;
    auto push = [&](const std::string& t) {
        if (!s.empty()) s += "*";
        s += t;
    };
    for (std::size_t i = 0; i < I.size(); ++i)
        if (I[i]) push("v" + std::to_string(i + 1));
    for (std::size_t i = 0; i < J.size(); ++i)
        if (J[i]) push("phi(v" + std::to_string(i + 1) + ")" + (J[i] > 1 ? "^" + std::to_string(J[i]) : ""));
    return s;
}

std::string to_string(const Monomial& m)
{
    std::string s = ij_label(m.I, m.J);
    auto push = [&](const std::string& t) {
        if (!s.empty()) s += "*";
        s += t;
    };
    if (m.l != 0) push("s^" + std::to_string(2 * m.l));
    if (m.k == 1) push("b");
    else if (m.k != 0) push("b^" + std::to_string(m.k));
    return s.empty() ? "1" : s;
}

Monomial parse_monomial(const std::string& text)
{
    std::vector<int> I, J;
    i64 l = 0, k = 0;
    if (text == "1") return {};
    static const std::regex v_re(R"(v(\d+))"), phi_re(R"(phi\(v(\d+)\)(?:\^(\d+))?)"), s_re(R"(s\^(-?\d+))"),
        b_re(R"(b(?:\^(-?\d+))?)");
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('*', start);
        std::string f = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        std::smatch m;
        auto grow = [](std::vector<int>& v, std::size_t n) {
            if (v.size() < n) v.resize(n, 0);
        };
        if (std::regex_match(f, m, v_re)) {
            std::size_t n = std::stoul(m[1]);
            if (n == 0) throw std::invalid_argument("v0 is not a monomial generator");
            grow(I, n);
            I[n - 1] += 1;
        } else if (std::regex_match(f, m, phi_re)) {
            std::size_t n = std::stoul(m[1]);
            if (n == 0) throw std::invalid_argument("phi(v0) is not a monomial generator");
            grow(J, n);
            J[n - 1] += m[2].matched ? std::stoi(m[2]) : 1;
        } else if (std::regex_match(f, m, s_re)) {
            i64 e = std::stoll(m[1]);
            if (e % 2 != 0) throw std::invalid_argument("sigma exponent must be even: " + f);
            l += e / 2;
        } else if (std::regex_match(f, m, b_re)) {
            k += m[1].matched ? std::stoll(m[1]) : 1;
        } else {
            throw std::invalid_argument("cannot parse monomial factor '" + f + "'");
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return make_monomial(I, J, l, k);
}

IJCatalog::IJCatalog(i64 p) : p_(p) { require_odd_prime(p); }

int IJCatalog::insert(std::vector<int> I, std::vector<int> J)
{
    trim(I);
    trim(J);
    auto key = std::make_pair(I, J);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    IJ item;
    item.deg = ij_degree(I, J, p_);
    item.u = underlying_dim(item.deg);
    item.size_I = static_cast<int>(std::count(I.begin(), I.end(), 1));
    item.r = least_index(I);
    item.s = least_index(J);
    item.I = std::move(I);
    item.J = std::move(J);
    int id = size();
    items_.push_back(item);
    index_.emplace(key, id);
    auto& bucket = by_u_[item.u];
    bucket.push_back(id);
    std::sort(bucket.begin(), bucket.end(), [this](int x, int y) {
        return std::tie(items_[x].I, items_[x].J) < std::tie(items_[y].I, items_[y].J);
    });
    return id;
}

void IJCatalog::ensure(i64 u_bound)
{
    if (u_bound <= covered_) return;
    // u(v_n) = 2p^n - 3, u(Phi(v_n)) = 2p^{n+1} - 2p
    int nmax_v = 0;
    while (2 * ipow(p_, nmax_v + 1) - 3 <= u_bound) ++nmax_v;
    int nmax_phi = 0;
    while (2 * ipow(p_, nmax_phi + 2) - 2 * p_ <= u_bound) ++nmax_phi;
    std::vector<i64> uphi(static_cast<std::size_t>(nmax_phi));
    for (int n = 1; n <= nmax_phi; ++n) uphi[n - 1] = 2 * ipow(p_, n + 1) - 2 * p_;

    std::vector<int> J(static_cast<std::size_t>(nmax_phi), 0);
    std::vector<int> I(static_cast<std::size_t>(nmax_v), 0);
    for (unsigned mask = 0; mask < (1u << nmax_v); ++mask) {
        for (int n = 0; n < nmax_v; ++n) I[n] = (mask >> n) & 1;
        i64 uI = underlying_dim(vI_degree(I, p_));
        if (uI > u_bound) continue;
        // odometer over J with sum j_n * uphi_n <= u_bound - uI
        std::fill(J.begin(), J.end(), 0);
        for (;;) {
            insert(I, J);
            int pos = 0;
            i64 used = 0;
            for (int n = 0; n < nmax_phi; ++n) used += J[n] * uphi[n];
            while (pos < nmax_phi) {
                if (uI + used + uphi[pos] <= u_bound) {
                    ++J[pos];
                    break;
                }
                used -= J[pos] * uphi[pos];
                J[pos] = 0;
                ++pos;
            }
            if (pos == nmax_phi) break;
        }
    }
    covered_ = u_bound;
}

const std::vector<int>& IJCatalog::with_u(i64 u)
{
    ensure(u);
    static const std::vector<int> none;
    auto it = by_u_.find(u);
    return it == by_u_.end() ? none : it->second;
}

int IJCatalog::find(const std::vector<int>& I0, const std::vector<int>& J0)
{
    std::vector<int> I = I0, J = J0;
    trim(I);
    trim(J);
    if (negligible(I)) return -1;
    ensure(underlying_dim(ij_degree(I, J, p_)));
    auto it = index_.find({I, J});
    return it == index_.end() ? -1 : it->second;
}

} // namespace bpr
