#include "bpr/cli.hpp"

#include "bpr/emit.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bpr {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Common {
    i64 p = 3;
    std::string window;
    std::string format = "json";
    std::string out;
};

void emit(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty()) out << content;
    else write_atomic(path, content);
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (f == a) return;
    throw UsageError("unsupported --format " + f);
}

std::size_t node_cap(std::size_t flag_value)
{
    if (const char* env = std::getenv("BPRCALC_MAX_NODES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (!end || *end || v == 0) throw UsageError("BPRCALC_MAX_NODES must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    if (flag_value == 0) throw UsageError("--max-nodes must be positive");
    return flag_value;
}

Mode parse_mode(const std::string& s)
{
    if (s == "snf") return Mode::Snf;
    if (s == "pattern") return Mode::Pattern;
    throw UsageError("--mode must be pattern or snf");
}

// diff report goes to its own file when asked, else stderr
void report(const std::string& path, const Json& j, std::ostream& err)
{
    if (path.empty()) err << dump(j);
    else write_atomic(path, dump(j));
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) v.push_back(item);
    return v;
}

// selfcheck

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

Check inequality_check(i64 p)
{
    Check c{"torsion_inequalities", true, ""};
    for (int n = 1; n <= 4; ++n) {
        const i64 pn = ipow(p, n), big = (pn - 1) * (p - 1);
        if (!(pn < big) || !(big + 1 < ipow(p, n + 1) - 1)) {
            c.pass = false;
            c.detail = "fails at n=" + std::to_string(n);
            return c;
        }
    }
    return c;
}

Check degree_consistency_check(i64 p)
{
    Check c{"degree_consistency", true, ""};
    auto fail = [&](const std::string& why) {
        if (c.pass) c.detail = why;
        c.pass = false;
    };
    const RDegree b = generator_degree(Generator::B, 0, p);
    const RDegree s2 = generator_degree(Generator::SigmaSquared, 0, p);
    for (int n = 1; n <= 4; ++n) {
        const i64 pn = ipow(p, n), pn1 = ipow(p, n - 1);
        const RDegree v = generator_degree(Generator::V, n, p), phi = generator_degree(Generator::Phi, n, p);
        // sigma^{-2p^{n-1}} -> v_n b^{p^n-1}
        RDegree src1 = (-pn1) * s2, tgt1 = v + (pn - 1) * b;
        // v_n sigma^{-2(p-1)p^{n-1}} -> phi(v_n) b^{(p^n-1)(p-1)+1}
        RDegree src2 = v + (-(p - 1) * pn1) * s2, tgt2 = phi + ((pn - 1) * (p - 1) + 1) * b;
        if (underlying_dim(src1) - underlying_dim(tgt1) != 1) fail("first map, n=" + std::to_string(n));
        if (underlying_dim(src2) - underlying_dim(tgt2) != 1) fail("second map, n=" + std::to_string(n));
        // the engine's own records must shift by one in a and nothing in c
        std::vector<int> In(static_cast<std::size_t>(n), 0);
        In[static_cast<std::size_t>(n - 1)] = 1;
        for (const Monomial& m : {make_monomial({}, {}, pn1, 0), make_monomial(In, {}, -pn1, 0)}) {
            for (const auto& r : differentials(m, p)) {
                RDegree shift = degree(r.target, p) - degree(r.source, p);
                if (shift != RDegree{-1, 0}) fail("engine record " + to_string(r.source));
            }
        }
    }
    return c;
}

Check kinvariant_check(i64 p)
{
    Check c{"kinvariant_degree", true, ""};
    for (int n = 1; n <= 3; ++n) {
        RDegree want{2 * ipow(p, n - 1) - 1, ipow(p, n) - ipow(p, n - 1)};
        if (kinvariant_degree(n, p) != want) {
            c.pass = false;
            c.detail = "n=" + std::to_string(n);
        }
    }
    return c;
}

Check tower_check(i64 p)
{
    Check c{"tower_consistency", true, ""};
    for (int n = 1; n <= 3 && c.pass; ++n) {
        for (auto* build : {&even_pattern, &odd_pattern}) {
            std::string v = check_tower(build(n, p), n, p);
            if (!v.empty()) {
                c.pass = false;
                c.detail = "n=" + std::to_string(n) + ": " + v;
                break;
            }
        }
    }
    return c;
}

Check table_check(const std::string& name, const Window& w, const EinftyTable& t, const std::map<RDegree, GroupExpr>& want)
{
    auto m = compare_tables(w, t, want);
    Check c{name, m.empty(), ""};
    if (!m.empty()) c.detail = std::to_string(m.size()) + " mismatches, first at " + to_string(m.front().degree);
    return c;
}

int run_selfcheck(i64 p, const std::string& out_path, std::ostream& out)
{
    if (p != 3 && p != 5 && p != 7) throw UsageError("selfcheck supports p in {3,5,7}");
    const Window small{-10, 10, -5, 5};
    std::vector<Check> checks{inequality_check(p), degree_consistency_check(p), kinvariant_check(p), tower_check(p)};

    EngineOptions opts;
    const EinftyTable snf = run_to_einfty(small, p, opts);
    checks.push_back(table_check("snf_vs_closed_form", small, snf, closed_form_table(small, p)));
    opts.mode = Mode::Pattern;
    std::map<RDegree, GroupExpr> snf_groups;
    for (const auto& [d, r] : snf.entries) snf_groups[d] = r.group;
    checks.push_back(table_check("pattern_vs_snf", small, run_to_einfty(small, p, opts), snf_groups));
    const Window tw{-6, 6, -3, 3};
    checks.push_back(table_check("tate_lattice", tw, tate(tw, p), tate_expected(tw)));

    Json arr = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    emit(out_path, dump(Json{{"p", p}, {"checks", arr}, {"pass", all}}), out);
    return all ? 0 : 1;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"R-graded coefficient and spectral sequence calculator", "bprcalc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.failure_message(CLI::FailureMessage::help);

    std::function<int()> action;
    auto add_common = [](CLI::App* sc, Common& c, bool window) {
        sc->add_option("--p", c.p, "odd prime")->required();
        if (window) sc->add_option("--window", c.window, "A0..A1,C0..C1")->required()->allow_extra_args(false);
        sc->add_option("--out", c.out, "write here instead of stdout");
    };

    // em
    Common em_c;
    std::string em_kind = "all";
    auto* em = app.add_subcommand("em", "Eilenberg-MacLane coefficient charts");
    add_common(em, em_c, true);
    em->add_option("--kind", em_kind, "Mackey functor kind or all");
    em->add_option("--format", em_c.format, "json|csv|svg");
    em->callback([&] {
        action = [&] {
            const Window w = Window::parse(em_c.window);
            require_odd_prime(em_c.p);
            require_format(em_c.format, {"json", "csv", "svg"});
            std::vector<MackeyKind> kinds;
            if (em_kind == "all") kinds = all_mackey_kinds();
            else kinds.push_back(parse_kind(em_kind));
            if (kinds.size() > 1 && em_c.format != "json") throw UsageError("--kind all needs --format json");
            std::string text;
            if (em_c.format == "json") {
                if (kinds.size() == 1) text = dump(chart_json(chart(kinds[0], w, em_c.p)));
                else {
                    Json j = Json::object();
                    for (MackeyKind k : kinds) j[kind_name(k)] = chart_json(chart(k, w, em_c.p));
                    text = dump(j);
                }
            } else if (em_c.format == "csv") {
                text = chart_csv(chart(kinds[0], w, em_c.p));
            } else {
                text = chart_svg(chart(kinds[0], w, em_c.p), w, em_c.p, kind_name(kinds[0]));
            }
            emit(em_c.out, text, out);
            return 0;
        };
    });

    // coeff
    Common cf_c;
    bool itemized = false;
    auto* cf = app.add_subcommand("coeff", "closed-form coefficients");
    add_common(cf, cf_c, true);
    cf->add_option("--format", cf_c.format, "json|csv|svg");
    cf->add_flag("--itemized", itemized, "one row per monomial");
    cf->callback([&] {
        action = [&] {
            const Window w = Window::parse(cf_c.window);
            require_odd_prime(cf_c.p);
            require_format(cf_c.format, {"json", "csv", "svg"});
            auto listing = family_listing(w, cf_c.p);
            std::string text = cf_c.format == "json" ? dump(coeff_json(listing, itemized))
                               : cf_c.format == "csv" ? coeff_csv(listing)
                                                      : coeff_svg(listing, w, cf_c.p);
            emit(cf_c.out, text, out);
            return 0;
        };
    });

    // ss and tate share the engine knobs
    Common ss_c;
    std::string mode = "snf", check, report_path, rule_text;
    bool ss_tate = false;
    i64 b_report = -1, u_report = -1;
    std::size_t max_nodes = EngineOptions{}.max_nodes;
    auto* ss = app.add_subcommand("ss", "Borel spectral sequence to E-infinity");
    add_common(ss, ss_c, true);
    ss->add_option("--mode", mode, "pattern|snf");
    ss->add_flag("--tate", ss_tate, "run the Tate variant");
    ss->add_option("--check", check, "closed-form|tate");
    ss->add_option("--format", ss_c.format, "json|csv");
    ss->add_option("--b-report", b_report, "reported b-exponent cap");
    ss->add_option("--u-report", u_report, "Tate reporting bound");
    ss->add_option("--rule-offset", rule_text, "perturb the differential rule, e.g. first-even=1");
    ss->add_option("--max-nodes", max_nodes, "resource cap");
    ss->add_option("--report", report_path, "diff report path (default stderr)");

    auto run_engine = [&](bool as_tate) {
        const Window w = Window::parse(ss_c.window);
        require_odd_prime(ss_c.p);
        require_format(ss_c.format, {"json", "csv"});
        EngineOptions o;
        o.mode = parse_mode(mode);
        o.tate = as_tate;
        o.b_report = b_report;
        o.u_report = u_report;
        o.max_nodes = node_cap(max_nodes);
        if (!rule_text.empty()) o.rule = DifferentialRule::parse(rule_text);
        if (!check.empty() && check != "closed-form" && check != "tate") throw UsageError("--check must be closed-form or tate");
        if (check == "closed-form" && as_tate) throw UsageError("--check closed-form applies to the non-Tate run");
        if (check == "tate" && !as_tate) throw UsageError("--check tate needs --tate");

        const EinftyTable t = as_tate ? tate(w, ss_c.p, o) : run_to_einfty(w, ss_c.p, o);
        emit(ss_c.out, ss_c.format == "json" ? dump(einfty_json(t)) : einfty_csv(t), out);
        if (check.empty()) return 0;
        auto m = compare_tables(w, t, as_tate ? tate_expected(w) : closed_form_table(w, ss_c.p));
        report(report_path, diff_report(check, w, m), err);
        return m.empty() ? 0 : 1;
    };
    ss->callback([&] { action = [&] { return run_engine(ss_tate); }; });

    auto* tt = app.add_subcommand("tate", "Tate spectral sequence");
    add_common(tt, ss_c, true);
    bool tt_check = false;
    tt->add_option("--mode", mode, "pattern|snf");
    tt->add_option("--format", ss_c.format, "json|csv");
    tt->add_option("--u-report", u_report, "reporting bound on u of the I,J part");
    tt->add_flag("--check", tt_check, "compare with Z/p[b,b^-1]");
    tt->add_option("--max-nodes", max_nodes, "resource cap");
    tt->add_option("--report", report_path, "diff report path (default stderr)");
    tt->callback([&] {
        action = [&] {
            if (tt_check) check = "tate";
            return run_engine(true);
        };
    });

    // tower
    Common tw_c;
    int tower_n = 1;
    std::string pattern;
    auto* tw = app.add_subcommand("tower", "slice tower pattern for one n");
    add_common(tw, tw_c, false);
    tw->add_option("--n", tower_n, "index n >= 1")->required();
    tw->add_option("--pattern", pattern, "even|odd")->required();
    tw->add_option("--format", tw_c.format, "json|svg");
    tw->callback([&] {
        action = [&] {
            require_odd_prime(tw_c.p);
            require_format(tw_c.format, {"json", "svg"});
            if (tower_n < 1) throw UsageError("--n must be at least 1");
            std::vector<TowerEntry> entries;
            if (pattern == "even") entries = even_pattern(tower_n, tw_c.p);
            else if (pattern == "odd") entries = odd_pattern(tower_n, tw_c.p);
            else throw UsageError("--pattern must be even or odd");
            std::string bad = check_tower(entries, tower_n, tw_c.p);
            if (!bad.empty()) {
                err << "tower check failed: " << bad << "\n";
                return 1;
            }
            emit(tw_c.out,
                 tw_c.format == "json" ? dump(tower_json(entries, tower_n, tw_c.p, pattern))
                                       : tower_svg(entries, tower_n, tw_c.p, pattern),
                 out);
            return 0;
        };
    });

    // mvfgl
    Common mv_c;
    std::string fgl_spec = "additive", verify = "unit,comm", emit_path;
    int order = 0;
    auto* mv = app.add_subcommand("mvfgl", "p-valued formal group law");
    add_common(mv, mv_c, false);
    mv->add_option("--fgl", fgl_spec, "additive|multiplicative|log:m1,m2,...");
    mv->add_option("--order", order, "truncation order (default 3p)");
    mv->add_option("--verify", verify, "comma list of unit,comm,assoc,zeta");
    mv->add_option("--emit", emit_path, "write theta as JSON");
    mv->callback([&] {
        action = [&] {
            require_odd_prime(mv_c.p);
            const int N = order > 0 ? order : static_cast<int>(3 * mv_c.p);
            const FGL f = FGL::parse(fgl_spec, N);
            std::vector<std::string> wanted = split(verify, ',');
            for (const auto& v : wanted)
                if (v != "unit" && v != "comm" && v != "assoc" && v != "zeta") throw UsageError("unknown --verify item " + v);

            Json checks = Json::object();
            bool all = true;
            MultiValuedFGL m;
            try {
                m = build_theta(f, mv_c.p, N);
            } catch (const std::runtime_error& e) {
                // descent failure is a verification result, not a crash
                err << "theta construction failed: " << e.what() << "\n";
                emit(mv_c.out, dump(Json{{"p", mv_c.p}, {"order", N}, {"fgl", f.name}, {"checks", {{"zeta", false}}}, {"pass", false}}), out);
                return 1;
            }
            for (const auto& v : wanted) {
                bool ok = true;
                if (v == "unit") ok = verify_unit(m);
                else if (v == "comm") ok = verify_commutativity(m);
                else if (v == "zeta") ok = m.zeta_free_verified;
                else {
                    auto r = verify_associativity(m, f, N);
                    ok = r.ok;
                    if (!ok) err << "associativity: " << r.detail << "\n";
                }
                checks[v] = ok;
                all = all && ok;
            }
            if (!emit_path.empty()) write_atomic(emit_path, dump(theta_json(m)));
            emit(mv_c.out, dump(Json{{"p", mv_c.p}, {"order", N}, {"fgl", f.name}, {"checks", checks}, {"pass", all}}), out);
            return all ? 0 : 1;
        };
    });

    // selfcheck
    i64 sc_p = 3;
    std::string sc_out;
    auto* sc = app.add_subcommand("selfcheck", "bundled invariant and oracle checks");
    sc->add_option("--p", sc_p, "3, 5 or 7")->required();
    sc->add_option("--out", sc_out, "write here instead of stdout");
    sc->callback([&] { action = [&] { return run_selfcheck(sc_p, sc_out, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace bpr
