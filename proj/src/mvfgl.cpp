#include "bpr/mvfgl.hpp"

#include <sstream>
#include <stdexcept>

namespace bpr {

mpq_class FGL::m(int i) const
{
    if (i < 1 || static_cast<std::size_t>(i) > log_coefficients.size()) return 0;
    return log_coefficients[static_cast<std::size_t>(i - 1)];
}

FGL FGL::additive() { return FGL{"additive", {}}; }

FGL FGL::multiplicative(int order)
{
    FGL f{"multiplicative", {}};
    for (int i = 1; i <= order; ++i) f.log_coefficients.push_back(mpq_class(i % 2 == 0 ? 1 : -1, i + 1));
    for (auto& c : f.log_coefficients) c.canonicalize();
    return f;
}

FGL FGL::parse(const std::string& spec, int order)
{
    if (spec == "additive") return additive();
    if (spec == "multiplicative") return multiplicative(order);
    if (spec.rfind("log:", 0) != 0) throw std::invalid_argument("unknown formal group law '" + spec + "'");
    FGL f{spec, {}};
    std::stringstream ss(spec.substr(4));
    std::string item;
    while (std::getline(ss, item, ',')) {
        mpq_class q;
        if (item.empty() || q.set_str(item, 10) != 0) throw std::invalid_argument("bad log coefficient '" + item + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + item + "'");
        q.canonicalize();
        f.log_coefficients.push_back(q);
    }
    return f;
}

namespace {

QSeries one_var(const std::string& v, int order) { return QSeries({v}, order, mpq_class(0)); }

Exponent mono(int a, int b = 0, int c = 0, int d = 0) { return Exponent{a, b, c, d}; }

// outer(inner) for one-variable series, inner without constant term
QSeries compose(const std::vector<mpq_class>& outer, const QSeries& inner)
{
    QSeries out = inner.like();
    QSeries pw = inner.like();
    pw.add_term(mono(0), 1);
    for (std::size_t k = 0; k < outer.size() && static_cast<int>(k) <= inner.order(); ++k) {
        if (k > 0) pw = pw * inner;
        if (outer[k] == 0) continue;
        QSeries t = pw;
        t.scale(outer[k]);
        out += t;
    }
    return out;
}

std::vector<mpq_class> coeffs(const QSeries& s)
{
    std::vector<mpq_class> c(static_cast<std::size_t>(s.order() + 1));
    for (const auto& [e, v] : s.terms()) c[static_cast<std::size_t>(e[0])] = v;
    return c;
}

std::vector<mpq_class> log_coeffs(const FGL& f, int order)
{
    std::vector<mpq_class> c(static_cast<std::size_t>(order + 1));
    if (order >= 1) c[1] = 1;
    for (int i = 1; i + 1 <= order; ++i) c[static_cast<std::size_t>(i + 1)] = f.m(i);
    return c;
}

mpz_class binomial(long n, long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// coefficients of G^m for m = 0..mmax, G = exp_F
std::vector<std::vector<mpq_class>> exp_powers(const FGL& f, int order, int mmax)
{
    QSeries g = exp_from_log(f, order);
    std::vector<std::vector<mpq_class>> out;
    QSeries pw = g.like();
    pw.add_term(mono(0), 1);
    for (int m = 0; m <= mmax; ++m) {
        if (m > 0) pw = pw * g;
        out.push_back(coeffs(pw));
    }
    return out;
}

// power sums p_1..p_M of the roots of a monic polynomial with elementary symmetric functions e[0..]
template <class T>
std::vector<MvSeries<T>> power_sums(const std::vector<MvSeries<T>>& e, int M)
{
    std::vector<MvSeries<T>> ps;
    const int deg = static_cast<int>(e.size());
    for (int m = 1; m <= M; ++m) {
        MvSeries<T> s = e.front().like();
        for (int i = 1; i < m && i <= deg; ++i) {
            MvSeries<T> t = e[static_cast<std::size_t>(i - 1)] * ps[static_cast<std::size_t>(m - i - 1)];
            if (i % 2 == 1) s += t;
            else s -= t;
        }
        if (m <= deg) {
            MvSeries<T> t = e[static_cast<std::size_t>(m - 1)];
            t.scale(mpq_class(m));
            if (m % 2 == 1) s += t;
            else s -= t;
        }
        ps.push_back(std::move(s));
    }
    return ps;
}

// elementary symmetric e_1..e_M from power sums by Newton's identities
template <class T>
std::vector<MvSeries<T>> elementary(const std::vector<MvSeries<T>>& ps, const T& one)
{
    std::vector<MvSeries<T>> e;
    MvSeries<T> e0 = ps.front().like();
    e0.add_term(Exponent{}, one);
    e.push_back(e0);
    for (std::size_t m = 1; m <= ps.size(); ++m) {
        MvSeries<T> s = e0.like();
        for (std::size_t i = 1; i <= m; ++i) {
            MvSeries<T> t = e[m - i] * ps[i - 1];
            if (i % 2 == 1) s += t;
            else s -= t;
        }
        s.scale(mpq_class(1, static_cast<unsigned long>(m)));
        e.push_back(std::move(s));
    }
    e.erase(e.begin());
    return e;
}

// Q(zeta) series in s,t,u supported on p-th powers -> rational series in S = s^p, T = t^p, U = u^p
QSeries descend(const CSeries& c, i64 p, int order, const std::vector<std::string>& vars)
{
    QSeries out(vars, order, mpq_class(0));
    for (const auto& [e, v] : c.terms()) {
        if (!v.is_rational()) throw std::runtime_error("symmetric function is not zeta-free");
        Exponent f{};
        for (std::size_t i = 0; i < kMaxSeriesVars; ++i) {
            if (e[i] % p != 0) throw std::runtime_error("symmetric function is not invariant under the zeta action");
            f[i] = static_cast<int>(e[i] / p);
        }
        out.add_term(f, v.rational_part());
    }
    return out;
}

// substitute S_i = log_F(x_i) in every variable
QSeries back_substitute(const QSeries& s, const FGL& f, int order, const std::vector<std::string>& vars)
{
    const std::size_t nv = vars.size();
    QSeries lx = compose(log_coeffs(f, order), [&] {
        QSeries x = one_var("x", order);
        x.add_term(mono(1), 1);
        return x;
    }());
    std::vector<std::vector<mpq_class>> lpow; // coefficients of log_F(x)^a
    QSeries pw = lx.like();
    pw.add_term(mono(0), 1);
    for (int a = 0; a <= order; ++a) {
        if (a > 0) pw = pw * lx;
        lpow.push_back(coeffs(pw));
    }
    QSeries out(vars, order, mpq_class(0));
    for (const auto& [e, v] : s.terms()) {
        // product over variables of log^e[i], expanded term by term
        std::vector<std::pair<Exponent, mpq_class>> acc{{Exponent{}, v}};
        for (std::size_t i = 0; i < nv; ++i) {
            if (e[i] == 0) continue;
            const auto& lp = lpow[static_cast<std::size_t>(e[i])];
            std::vector<std::pair<Exponent, mpq_class>> next;
            for (const auto& [ex, cx] : acc) {
                const int used = total_degree(ex);
                for (int d = e[i]; d + used <= order; ++d) {
                    if (lp[static_cast<std::size_t>(d)] == 0) continue;
                    Exponent ey = ex;
                    ey[i] = d;
                    next.emplace_back(ey, cx * lp[static_cast<std::size_t>(d)]);
                }
            }
            acc.swap(next);
        }
        for (const auto& [ex, cx] : acc) out.add_term(ex, cx);
    }
    return out;
}

void require_theta(const MultiValuedFGL& m)
{
    if (m.theta.size() != static_cast<std::size_t>(m.p)) throw std::invalid_argument("theta must have p entries");
    for (const auto& t : m.theta)
        if (t.coefficient(Exponent{}) != 0) throw std::invalid_argument("theta_i has a constant term; Theta is degenerate");
}

} // namespace

QSeries log_series(const FGL& f, int order)
{
    QSeries x = one_var("x", order);
    x.add_term(mono(1), 1);
    return compose(log_coeffs(f, order), x);
}

QSeries exp_from_log(const FGL& f, int order)
{
    if (order < 1) throw std::invalid_argument("order must be positive");
    const auto lc = log_coeffs(f, order);
    QSeries e = one_var("s", order);
    e.add_term(mono(1), 1);
    for (int n = 2; n <= order; ++n) {
        QSeries l = compose(lc, e);
        mpq_class c = l.coefficient(mono(n));
        if (c != 0) e.add_term(mono(n), -c);
    }
    return e;
}

MultiValuedFGL build_theta(const FGL& f, i64 p, int order)
{
    require_odd_prime(p);
    if (order < p) throw std::invalid_argument("truncation order must be at least p");
    const int P = static_cast<int>(p), big = P * order;
    const auto gp = exp_powers(f, order, P);
    const Cyclotomic czero(p);
    const std::vector<std::string> st{"s", "t"};

    // F_j^m = G^m((s + z^j t)^p), summed over j
    std::vector<CSeries> ps;
    for (int m = 1; m <= P; ++m) {
        CSeries sum(st, big, czero);
        for (int j = 0; j < P; ++j) {
            for (int k = 1; k <= order; ++k) {
                const mpq_class& g = gp[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
                if (g == 0) continue;
                for (int a = 0; a <= P * k; ++a) {
                    Cyclotomic c = Cyclotomic::zeta_power(p, static_cast<i64>(j) * a);
                    c *= g * mpq_class(binomial(P * k, a));
                    sum.add_term(mono(P * k - a, a), c);
                }
            }
        }
        ps.push_back(std::move(sum));
    }
    std::vector<CSeries> es = elementary(ps, Cyclotomic(p, 1));

    MultiValuedFGL out;
    out.p = p;
    out.order = order;
    out.fgl = f.name;
    for (const auto& e : es) out.theta.push_back(back_substitute(descend(e, p, order, {"x", "y"}), f, order, {"x", "y"}));
    out.zeta_free_verified = true;
    return out;
}

bool verify_unit(const MultiValuedFGL& m)
{
    if (m.theta.size() != static_cast<std::size_t>(m.p)) return false;
    for (int i = 1; i <= m.p; ++i) {
        QSeries want = m.theta[static_cast<std::size_t>(i - 1)].like();
        want.add_term(mono(i), mpq_class(binomial(m.p, i)));
        if (!(m.theta[static_cast<std::size_t>(i - 1)].at_zero(1) == want)) return false;
    }
    return true;
}

bool verify_commutativity(const MultiValuedFGL& m)
{
    for (const auto& t : m.theta)
        if (!(t.permuted({1, 0}, t.variables()) == t)) return false;
    return true;
}

std::vector<QSeries> resultant_route(const MultiValuedFGL& m, int variant)
{
    require_theta(m);
    if (variant != 0 && variant != 1) throw std::invalid_argument("variant must be 0 or 1");
    const int N = m.order, P = static_cast<int>(m.p), M = P * P;
    const std::vector<std::string> vars{"x", "y", "z", "W"};
    // positions: A = Theta(a1, a2)(W) has roots w; B = Theta(b1, W)(Z)
    const std::size_t a1 = variant == 0 ? 1 : 0, a2 = variant == 0 ? 2 : 1, b1 = variant == 0 ? 0 : 2;
    std::vector<QSeries> ea, eb;
    for (const auto& t : m.theta) {
        ea.push_back(t.permuted({a1, a2}, vars));
        eb.push_back(t.permuted({b1, 3}, vars));
    }
    auto pa = power_sums(ea, N); // sum_i w_i^k
    auto pb = power_sums(eb, M); // power sums of roots of B, as series in (b1, W)

    std::vector<QSeries> q;
    for (int mm = 0; mm < M; ++mm) {
        QSeries out(vars, N, mpq_class(0));
        for (const auto& [e, c] : pb[static_cast<std::size_t>(mm)].terms()) {
            const int k = e[3];
            Exponent base = e;
            base[3] = 0;
            if (k == 0) {
                out.add_term(base, c * m.p);
                continue;
            }
            for (const auto& [f, d] : pa[static_cast<std::size_t>(k - 1)].terms()) {
                Exponent g;
                for (std::size_t i = 0; i < kMaxSeriesVars; ++i) g[i] = base[i] + f[i];
                out.add_term(g, c * d);
            }
        }
        q.push_back(std::move(out));
    }
    auto e = elementary(q, mpq_class(1));
    for (auto& s : e) s = s.permuted({0, 1, 2}, {"x", "y", "z"});
    return e;
}

std::vector<QSeries> direct_route(const FGL& f, i64 p, int order)
{
    require_odd_prime(p);
    const int P = static_cast<int>(p), M = P * P, big = P * order;
    const auto gp = exp_powers(f, order, M);
    const Cyclotomic czero(p);
    const std::vector<std::string> stu{"s", "t", "u"}, xyz{"x", "y", "z"};

    // H_n = sum_{j,k} (s + z^j t + z^k u)^{pn}, descended to S, T, U
    std::vector<QSeries> h(static_cast<std::size_t>(order + 1));
    for (int n = 1; n <= order; ++n) {
        const int d = P * n;
        CSeries sum(stu, big, czero);
        for (int b = 0; b <= d; ++b) {
            for (int c = 0; b + c <= d; ++c) {
                const mpq_class mult(binomial(d, b) * binomial(d - b, c));
                Cyclotomic acc(p);
                for (int j = 0; j < P; ++j)
                    for (int k = 0; k < P; ++k) acc += Cyclotomic::zeta_power(p, static_cast<i64>(j) * b + static_cast<i64>(k) * c);
                acc *= mult;
                sum.add_term(mono(d - b - c, b, c), acc);
            }
        }
        h[static_cast<std::size_t>(n)] = descend(sum, p, order, {"S", "T", "U"});
    }
    std::vector<QSeries> q;
    for (int m = 1; m <= M; ++m) {
        QSeries s({"S", "T", "U"}, order, mpq_class(0));
        for (int n = 1; n <= order; ++n) {
            const mpq_class& g = gp[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
            if (g == 0) continue;
            QSeries t = h[static_cast<std::size_t>(n)];
            t.scale(g);
            s += t;
        }
        q.push_back(back_substitute(s, f, order, xyz));
    }
    return elementary(q, mpq_class(1));
}

AssociativityReport verify_associativity(const MultiValuedFGL& m, const FGL& f, int order)
{
    if (order > m.order) throw std::invalid_argument("associativity order exceeds the theta truncation");
    MultiValuedFGL cut = m;
    cut.order = order;
    for (auto& t : cut.theta) {
        QSeries s(t.variables(), order, mpq_class(0));
        for (const auto& [e, c] : t.terms()) s.add_term(e, c);
        t = s;
    }
    AssociativityReport r;
    auto left = resultant_route(cut, 1);
    auto right = resultant_route(cut, 0);
    auto direct = direct_route(f, m.p, order);
    r.sides_agree = left == right;
    r.direct_agrees = right == direct;
    for (const auto& s : direct) r.terms_compared += s.terms().size();
    r.ok = r.sides_agree && r.direct_agrees;
    if (!r.sides_agree) r.detail = "the two resultant eliminations differ";
    else if (!r.direct_agrees) r.detail = "resultant route differs from the direct triple product";
    return r;
}

} // namespace bpr
