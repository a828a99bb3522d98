#include "bpr/borel_ss.hpp"

#include "bpr/closed_form.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bpr {

DifferentialRule DifferentialRule::parse(const std::string& text)
{
    DifferentialRule r;
    if (text.empty()) return r;
    static const std::regex item(R"(\s*(first|second)-(even|odd)\s*=\s*(-?\d+)\s*)");
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::smatch m;
        if (!std::regex_match(part, m, item)) throw std::invalid_argument("bad rule offset '" + part + "'");
        i64 v = std::stoll(m[3]);
        bool first = m[1] == "first", even = m[2] == "even";
        (first ? (even ? r.first_even : r.first_odd) : (even ? r.second_even : r.second_odd)) = v;
    }
    return r;
}

namespace {

std::optional<DifferentialRecord> forward(const Monomial& m, i64 p, const DifferentialRule& rule)
{
    if (m.l == 0) return std::nullopt;
    const int n = valuation(m.l, p) + 1;
    const i64 pn1 = ipow(p, n - 1), pn = checked_mul(pn1, p);
    const i64 c = m.l / pn1;
    const int size = m.size_I();

    DifferentialRecord rec;
    rec.source = m;
    rec.n = n;
    if (m.i_at(n) == 0) {
        rec.map = PatternMap::First;
        rec.stage = size % 2 == 0 ? pn - 1 + rule.first_even : pn + rule.first_odd;
        rec.unit = mod_floor(c, p);
        std::vector<int> I = m.I;
        if (static_cast<int>(I.size()) < n) I.resize(static_cast<std::size_t>(n), 0);
        I[static_cast<std::size_t>(n - 1)] = 1;
        rec.target = make_monomial(std::move(I), m.J, m.l - pn1, checked_add(m.k, rec.stage));
    } else if (mod_floor(c, p) == p - 1) {
        rec.map = PatternMap::Second;
        const i64 base = checked_mul(pn - 1, p - 1);
        rec.stage = (size - 1) % 2 == 0 ? base + 1 + rule.second_even : base + rule.second_odd;
        rec.unit = 1;
        std::vector<int> I = m.I, J = m.J;
        I[static_cast<std::size_t>(n - 1)] = 0;
        if (static_cast<int>(J.size()) < n) J.resize(static_cast<std::size_t>(n), 0);
        ++J[static_cast<std::size_t>(n - 1)];
        rec.target = make_monomial(std::move(I), std::move(J), m.l - checked_mul(p - 1, pn1), checked_add(m.k, rec.stage));
    } else {
        return std::nullopt;
    }
    if (rec.stage < 1) throw std::invalid_argument("rule offset makes a differential jump non-positive");
    return rec;
}

} // namespace

std::vector<DifferentialRecord> differentials(const Monomial& m, i64 p, const DifferentialRule& rule)
{
    require_odd_prime(p);
    auto rec = forward(m, p, rule);
    if (!rec) return {};
    return {*rec};
}

std::vector<DifferentialRecord> incoming(const Monomial& m, i64 p, const DifferentialRule& rule, bool allow_negative_b)
{
    require_odd_prime(p);
    std::vector<DifferentialRecord> out;
    const int top = static_cast<int>(std::max(m.I.size(), m.J.size()));
    auto consider = [&](std::vector<int> I, std::vector<int> J, i64 l) {
        Monomial w = make_monomial(std::move(I), std::move(J), l, 0);
        auto probe = forward(w, p, rule);
        if (!probe) return;
        w.k = m.k - probe->stage;
        if (w.k < 0 && !allow_negative_b) return;
        auto rec = forward(w, p, rule);
        if (rec && rec->target == m) out.push_back(*rec);
    };
    for (int n = 1; n <= top; ++n) {
        const i64 pn1 = ipow(p, n - 1);
        if (m.i_at(n) == 1) {
            std::vector<int> I = m.I;
            I[static_cast<std::size_t>(n - 1)] = 0;
            consider(std::move(I), m.J, checked_add(m.l, pn1));
        }
        if (m.i_at(n) == 0 && m.j_at(n) >= 1) {
            std::vector<int> I = m.I, J = m.J;
            if (static_cast<int>(I.size()) < n) I.resize(static_cast<std::size_t>(n), 0);
            I[static_cast<std::size_t>(n - 1)] = 1;
            --J[static_cast<std::size_t>(n - 1)];
            consider(std::move(I), std::move(J), checked_add(m.l, checked_mul(p - 1, pn1)));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.source < y.source; });
    return out;
}

PageTable e2_page(const Window& w, i64 p, i64 b_cap, std::size_t max_basis)
{
    require_odd_prime(p);
    if (w.empty()) throw std::invalid_argument("empty window");
    if (b_cap < 0) throw std::invalid_argument("negative b cap");
    PageTable t;
    t.window = w;
    t.p = p;
    t.b_cap = b_cap;
    IJCatalog cat(p);
    cat.ensure(w.u_max() + 2 * b_cap);
    std::size_t total = 0;
    for (RDegree d : w.degrees()) {
        const i64 ud = underlying_dim(d);
        PageEntry e;
        for (i64 k = 0; k <= b_cap; ++k) {
            const i64 u = ud + 2 * k;
            if (u < 0) continue;
            for (int id : cat.with_u(u)) {
                const IJ& ij = cat.at(id);
                e.basis.push_back(Monomial{ij.I, ij.J, (d.a - ij.deg.a) / 2, k});
            }
        }
        if (e.basis.empty()) continue;
        total += e.basis.size();
        if (total > max_basis) throw std::length_error("E2 page exceeds the basis cap");
        e.relations = IntMatrix(0, e.basis.size());
        for (std::size_t i = 0; i < e.basis.size(); ++i) {
            const Monomial& m = e.basis[i];
            if (m.k >= 1 || m.size_I() % 2 == 1) {
                std::vector<i64> r(e.basis.size(), 0);
                r[i] = p;
                e.relations.append_row(r);
            }
        }
        t.entries.emplace(d, std::move(e));
    }
    return t;
}

// past this b-exponent no family can place a class in the window; the K vs 2K stability test backs it up
i64 default_b_report(const Window& w, i64 p) { return closed_form_b_bound(w, p); }
i64 default_tate_u_report(const Window& w, i64 p) { return (w.u_max() - w.u_min()) + 2 * p * p; }

GroupExpr EinftyTable::at(RDegree d) const
{
    auto it = entries.find(d);
    return it == entries.end() ? GroupExpr{} : it->second.group;
}

namespace {

struct Key {
    int ij = 0;
    i64 l = 0, k = 0;
    friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
    std::size_t operator()(const Key& x) const noexcept
    {
        std::size_t h = std::hash<i64>()(x.l) * 1000003u ^ std::hash<i64>()(x.k);
        return h * 31u + static_cast<std::size_t>(x.ij);
    }
};

struct Node {
    Key key;
    RDegree deg;
    bool torsion = true;
    bool reported = false;
    bool has_diff = false;
    Key target;
    i64 stage = 0, unit = 0;
    int target_id = -1;
    int group = -1;
    std::size_t slot = 0;
};

// all sources in one degree hitting one target at one stage; the differential is block diagonal in these
struct Group {
    std::vector<int> members;
    int target = -1;
    i64 stage = 0;
    bool torsion = true;
    Lattice Z, B;
    std::vector<char> cycle, hit;
};

std::string coeff_label(const std::vector<i64>& v, const std::vector<std::string>& names, i64 p, bool torsion)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        i64 c = torsion ? mod_floor(v[i], p) : v[i];
        if (c == 0) continue;
        if (!s.empty()) s += c < 0 ? "-" : "+";
        else if (c < 0) s += "-";
        i64 a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a) + "*";
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

class Engine {
public:
    Engine(const Window& w, i64 p, const EngineOptions& o) : w_(w), p_(p), opt_(o), cat_(p) {}

    EinftyTable run()
    {
        EinftyTable out;
        out.window = w_;
        out.p = p_;
        out.mode = opt_.mode;
        out.tate = opt_.tate;
        out.b_report = opt_.tate ? 0 : (opt_.b_report >= 0 ? opt_.b_report : default_b_report(w_, p_));
        out.u_report = opt_.tate ? (opt_.u_report >= 0 ? opt_.u_report : default_tate_u_report(w_, p_)) : 0;

        std::vector<Key> reported = report_set(out.b_report, out.u_report);
        for (const Key& x : reported) nodes_[static_cast<std::size_t>(add(x))].reported = true;
        for (const Key& x : reported) close_over(x);
        build_groups();
        if (opt_.mode == Mode::Snf) run_snf();
        else run_pattern();
        collect(out);
        out.stats.nodes = nodes_.size();
        out.stats.groups = groups_.size();
        out.stats.reported = reported.size();
        out.stats.stages = stages_;
        return out;
    }

private:
    Monomial mono(const Key& x) const
    {
        const IJ& ij = cat_.at(x.ij);
        return Monomial{ij.I, ij.J, x.l, x.k};
    }

    Key key_of(const Monomial& m)
    {
        int id = cat_.find(m.I, m.J);
        if (id < 0) throw std::logic_error("monomial missing from catalog: " + to_string(m));
        return Key{id, m.l, m.k};
    }

    int add(const Key& x)
    {
        auto it = index_.find(x);
        if (it != index_.end()) return it->second;
        if (nodes_.size() >= opt_.max_nodes) throw std::length_error("engine node cap exceeded; shrink the window");
        Node n;
        n.key = x;
        const IJ& ij = cat_.at(x.ij);
        n.deg = ij.deg + x.l * RDegree{2, -1} + x.k * RDegree{0, -1};
        n.torsion = opt_.tate || x.k >= 1 || ij.size_I % 2 == 1;
        if (auto rec = forward(mono(x), p_, opt_.rule)) {
            n.has_diff = true;
            n.target = key_of(rec->target);
            n.stage = rec->stage;
            n.unit = rec->unit;
        }
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        index_.emplace(x, id);
        return id;
    }

    std::vector<std::pair<Key, i64>> sources_of(const Key& y)
    {
        std::vector<std::pair<Key, i64>> out;
        for (const auto& rec : incoming(mono(y), p_, opt_.rule, opt_.tate)) out.emplace_back(key_of(rec.source), rec.stage);
        return out;
    }

    std::vector<Key> report_set(i64 b_report, i64 u_report)
    {
        std::vector<Key> out;
        for (RDegree d : w_.degrees()) {
            const i64 ud = underlying_dim(d);
            i64 lo, hi;
            if (opt_.tate) {
                lo = mod_floor(d.a, 2);
                hi = u_report;
            } else {
                lo = ud;
                hi = ud + 2 * b_report;
                while (lo < 0) lo += 2;
            }
            for (i64 u = lo; u <= hi; u += 2) {
                for (int id : cat_.with_u(u)) {
                    const IJ& ij = cat_.at(id);
                    const i64 l = (d.a - ij.deg.a) / 2;
                    out.push_back(Key{id, l, ij.deg.c - l - d.c});
                }
            }
        }
        return out;
    }

    // everything the lattices of x depend on: its target, the target's earlier and same-page sources, and its own sources
    void close_over(const Key& x)
    {
        const int xi = add(x);
        if (nodes_[static_cast<std::size_t>(xi)].has_diff) {
            const Key y = nodes_[static_cast<std::size_t>(xi)].target;
            const i64 r = nodes_[static_cast<std::size_t>(xi)].stage;
            add(y);
            for (const auto& [w, s] : sources_of(y))
                if (s <= r) add(w);
        }
        for (const auto& [w, s] : sources_of(x)) add(w);
    }

    void build_groups()
    {
        std::map<std::tuple<int, i64, RDegree>, int> by_target;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            Node& n = nodes_[i];
            if (n.has_diff) {
                auto it = index_.find(n.target);
                n.target_id = it == index_.end() ? -1 : it->second;
            }
            if (n.target_id >= 0) {
                auto key = std::make_tuple(n.target_id, n.stage, n.deg);
                auto [it, fresh] = by_target.emplace(key, static_cast<int>(groups_.size()));
                if (fresh) {
                    Group g;
                    g.target = n.target_id;
                    g.stage = n.stage;
                    g.torsion = n.torsion;
                    groups_.push_back(std::move(g));
                }
                n.group = it->second;
            } else {
                n.group = static_cast<int>(groups_.size());
                Group g;
                g.torsion = n.torsion;
                groups_.push_back(std::move(g));
            }
            Group& g = groups_[static_cast<std::size_t>(n.group)];
            if (g.torsion != n.torsion) throw std::logic_error("mixed coefficient types inside one block");
            n.slot = g.members.size();
            g.members.push_back(static_cast<int>(i));
        }
        for (Group& g : groups_) {
            const std::size_t m = g.members.size();
            const i64 mod = g.torsion ? p_ : 0;
            g.Z = Lattice::full(m, mod);
            g.B = Lattice(m, mod);
            g.cycle.assign(m, 1);
            g.hit.assign(m, 0);
        }
    }

    std::map<i64, std::vector<int>> by_stage() const
    {
        std::map<i64, std::vector<int>> out;
        for (std::size_t g = 0; g < groups_.size(); ++g)
            if (groups_[g].target >= 0) out[groups_[g].stage].push_back(static_cast<int>(g));
        return out;
    }

    void run_snf()
    {
        auto stages = by_stage();
        stages_ = stages.size();
        for (const auto& [stage, gids] : stages) {
            std::vector<std::pair<int, Lattice>> images;
            for (int gi : gids) {
                Group& g = groups_[static_cast<std::size_t>(gi)];
                const Node& y = nodes_[static_cast<std::size_t>(g.target)];
                Group& h = groups_[static_cast<std::size_t>(y.group)];
                IntMatrix D(g.members.size(), h.members.size());
                for (std::size_t i = 0; i < g.members.size(); ++i) D(i, y.slot) = nodes_[static_cast<std::size_t>(g.members[i])].unit;
                images.emplace_back(y.group, Lattice::from_generators(g.Z.image(D), h.B.modulus()));
                g.Z = g.Z.preimage(D, h.B);
            }
            for (auto& [hi, img] : images) {
                Group& h = groups_[static_cast<std::size_t>(hi)];
                h.B = h.B + img;
            }
        }
    }

    // greedy monomial bookkeeping: valid because every block maps to a single target coordinate
    void run_pattern()
    {
        auto stages = by_stage();
        stages_ = stages.size();
        for (const auto& [stage, gids] : stages) {
            std::vector<int> newly_hit;
            for (int gi : gids) {
                Group& g = groups_[static_cast<std::size_t>(gi)];
                const Node& y = nodes_[static_cast<std::size_t>(g.target)];
                Group& h = groups_[static_cast<std::size_t>(y.group)];
                if (h.hit[y.slot]) continue;
                g.cycle[0] = 0;
                newly_hit.push_back(g.target);
            }
            for (int t : newly_hit) {
                const Node& y = nodes_[static_cast<std::size_t>(t)];
                groups_[static_cast<std::size_t>(y.group)].hit[y.slot] = 1;
            }
        }
    }

    void collect(EinftyTable& out)
    {
        std::vector<char> done(groups_.size(), 0);
        for (const Node& n : nodes_) {
            if (!n.reported || done[static_cast<std::size_t>(n.group)]) continue;
            done[static_cast<std::size_t>(n.group)] = 1;
            const Group& g = groups_[static_cast<std::size_t>(n.group)];
            std::vector<std::string> names;
            for (int m : g.members) {
                const Node& mm = nodes_[static_cast<std::size_t>(m)];
                if (!mm.reported || mm.deg != n.deg) throw std::logic_error("block straddles the reported region");
                names.push_back(to_string(mono(mm.key)));
            }
            GroupExpr ge;
            std::vector<std::string> labels;
            if (opt_.mode == Mode::Snf) {
                LocalQuotient q;
                if (g.torsion) {
                    q = local_quotient(g.Z, g.B, p_);
                } else {
                    if (g.B.rank() != 0) throw std::logic_error("boundary in a free summand");
                    q = unit_part(g.Z, p_);
                }
                ge = {q.free_rank, q.modp_rank};
                for (const auto& v : q.free_generators) labels.push_back(coeff_label(v, names, p_, false));
                for (const auto& v : q.modp_generators) labels.push_back(coeff_label(v, names, p_, true));
            } else {
                pattern_result(g, names, ge, labels);
            }
            if (ge.is_zero()) continue;
            if (!w_.contains(n.deg)) throw std::logic_error("reported class outside the window");
            DegreeResult& dr = out.entries[n.deg];
            dr.degree = n.deg;
            dr.group += ge;
            dr.basis_labels.insert(dr.basis_labels.end(), labels.begin(), labels.end());
        }
        for (auto& [d, dr] : out.entries) std::sort(dr.basis_labels.begin(), dr.basis_labels.end());
    }

    void pattern_result(const Group& g, const std::vector<std::string>& names, GroupExpr& ge, std::vector<std::string>& labels) const
    {
        const bool killed = g.cycle[0] == 0;
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            if (g.hit[i] && (killed || !g.cycle[i])) throw std::logic_error("boundary is not a cycle (d o d != 0)");
            if (g.hit[i] || (killed && i == 0)) continue;
            (g.torsion ? ge.modp_rank : ge.free_rank) += 1;
            if (killed) {
                const i64 u0 = nodes_[static_cast<std::size_t>(g.members[0])].unit;
                const i64 ui = nodes_[static_cast<std::size_t>(g.members[i])].unit;
                // x_i - (u_i/u_0) x_0 is the cycle
                i64 inv = 1;
                for (i64 t = 1; t < p_; ++t)
                    if (mod_floor(u0 * t, p_) == 1) inv = t;
                std::vector<i64> v(g.members.size(), 0);
                v[i] = 1;
                v[0] = g.torsion ? mod_floor(-ui * inv, p_) : -ui * inv;
                labels.push_back(coeff_label(v, names, p_, g.torsion));
            } else {
                labels.push_back(names[i]);
            }
        }
    }

    Window w_;
    i64 p_;
    EngineOptions opt_;
    IJCatalog cat_;
    std::unordered_map<Key, int, KeyHash> index_;
    std::vector<Node> nodes_;
    std::vector<Group> groups_;
    std::size_t stages_ = 0;
};

} // namespace

EinftyTable run_to_einfty(const Window& w, i64 p, const EngineOptions& options)
{
    require_odd_prime(p);
    if (w.empty()) throw std::invalid_argument("empty window");
    if (options.b_report < -1 || options.u_report < -1) throw std::invalid_argument("negative report bound");
    Engine e(w, p, options);
    return e.run();
}

EinftyTable tate(const Window& w, i64 p, EngineOptions options)
{
    options.tate = true;
    return run_to_einfty(w, p, options);
}

} // namespace bpr
