#include "bpr/emit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bpr {

Json to_json(RDegree d) { return Json{{"a", d.a}, {"c", d.c}}; }

Json to_json(const Monomial& m)
{
    Json I = Json::array(), J = Json::object();
    for (std::size_t i = 0; i < m.I.size(); ++i)
        if (m.I[i]) I.push_back(i + 1);
    for (std::size_t i = 0; i < m.J.size(); ++i)
        if (m.J[i]) J[std::to_string(i + 1)] = m.J[i];
    return Json{{"I", I}, {"J", J}, {"l", m.l}, {"k", m.k}};
}

Json to_json(const GroupExpr& g) { return Json{{"free_rank", g.free_rank}, {"modp_rank", g.modp_rank}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<Mismatch> compare_tables(const Window& w, const EinftyTable& t, const std::map<RDegree, GroupExpr>& expected)
{
    std::vector<Mismatch> out;
    for (RDegree d : w.degrees()) {
        auto it = expected.find(d);
        GroupExpr e = it == expected.end() ? GroupExpr{} : it->second;
        GroupExpr c = t.at(d);
        if (!(c == e)) out.push_back({d, c, e});
    }
    return out;
}

std::map<RDegree, GroupExpr> tate_expected(const Window& w)
{
    std::map<RDegree, GroupExpr> m;
    if (w.a0 <= 0 && 0 <= w.a1)
        for (i64 c = w.c0; c <= w.c1; ++c) m[{0, c}] = GroupExpr{0, 1};
    return m;
}

Json diff_report(const std::string& against, const Window& w, const std::vector<Mismatch>& m)
{
    Json rows = Json::array();
    for (const auto& x : m)
        rows.push_back({{"degree", to_json(x.degree)}, {"computed", to_json(x.computed)}, {"expected", to_json(x.expected)}});
    return Json{{"against", against},
                {"degrees_compared", (w.a1 - w.a0 + 1) * (w.c1 - w.c0 + 1)},
                {"mismatches", rows},
                {"mismatch_count", m.size()}};
}

Json einfty_json(const EinftyTable& t)
{
    Json arr = Json::array();
    for (const auto& [d, r] : t.entries) {
        arr.push_back({{"degree", to_json(d)},
                       {"free_rank", r.group.free_rank},
                       {"modp_rank", r.group.modp_rank},
                       {"basis_labels", r.basis_labels}});
    }
    return arr;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string xml_escape(const std::string& s)
{
    std::string o;
    for (char ch : s) {
        switch (ch) {
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '&': o += "&amp;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
        }
    }
    return o;
}

struct Mark {
    RDegree d;
    GroupExpr g;
    std::string tip;
};

constexpr int kPitch = 16;
constexpr int kMargin = 32;

std::string grid_svg(const std::vector<Mark>& cells, const Window& w, const std::string& title)
{
    const i64 cols = w.a1 - w.a0 + 1, rows = w.c1 - w.c0 + 1;
    const i64 width = cols * kPitch + 2 * kMargin, height = rows * kPitch + 2 * kMargin;
    auto cx = [&](i64 a) { return kMargin + (a - w.a0) * kPitch + kPitch / 2; };
    auto cy = [&](i64 c) { return kMargin + (w.c1 - c) * kPitch + kPitch / 2; };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << " " << height << "\" font-family=\"monospace\" font-size=\"8\">\n";
    s << "<title>" << xml_escape(title) << "</title>\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (w.a0 <= 0 && 0 <= w.a1)
        s << "<line x1=\"" << cx(0) << "\" y1=\"" << kMargin << "\" x2=\"" << cx(0) << "\" y2=\"" << height - kMargin
          << "\" stroke=\"#bbbbbb\"/>\n";
    if (w.c0 <= 0 && 0 <= w.c1)
        s << "<line x1=\"" << kMargin << "\" y1=\"" << cy(0) << "\" x2=\"" << width - kMargin << "\" y2=\"" << cy(0)
          << "\" stroke=\"#bbbbbb\"/>\n";
    for (i64 a = w.a0; a <= w.a1; ++a)
        if (a % 5 == 0) s << "<text x=\"" << cx(a) << "\" y=\"" << height - kMargin / 2 << "\" text-anchor=\"middle\">" << a << "</text>\n";
    for (i64 c = w.c0; c <= w.c1; ++c)
        if (c % 5 == 0) s << "<text x=\"" << kMargin / 2 << "\" y=\"" << cy(c) + 3 << "\" text-anchor=\"middle\">" << c << "</text>\n";
    s << "<text x=\"" << width - kMargin / 2 << "\" y=\"" << height - kMargin / 2 << "\">a</text>\n";
    s << "<text x=\"" << kMargin / 2 << "\" y=\"" << kMargin / 2 << "\">c</text>\n";
    for (const Mark& gl : cells) {
        if (!w.contains(gl.d) || gl.g.is_zero()) continue;
        const i64 x = cx(gl.d.a), y = cy(gl.d.c);
        s << "<g><title>" << xml_escape(gl.tip) << "</title>";
        if (gl.g.free_rank > 0) {
            s << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5 << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"black\"/>";
            if (gl.g.free_rank > 1) s << "<text x=\"" << x + 6 << "\" y=\"" << y - 4 << "\">" << gl.g.free_rank << "</text>";
        }
        // torsion stacks upward, at most four dots drawn
        const i64 shown = std::min<i64>(gl.g.modp_rank, 4);
        for (i64 i = 0; i < shown; ++i) {
            const double dy = 1.5 * static_cast<double>(shown - 1) - 3.0 * static_cast<double>(i);
            std::ostringstream yy;
            yy << static_cast<double>(y) + dy;
            s << "<circle cx=\"" << x << "\" cy=\"" << yy.str() << "\" r=\"2\" fill=\"black\"/>";
        }
        if (gl.g.modp_rank > 4) s << "<text x=\"" << x + 6 << "\" y=\"" << y + 6 << "\">" << gl.g.modp_rank << "</text>";
        s << "</g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace

std::string einfty_csv(const EinftyTable& t)
{
    std::string s = "a,c,free_rank,modp_rank,basis_labels\n";
    for (const auto& [d, r] : t.entries) {
        s += std::to_string(d.a) + "," + std::to_string(d.c) + "," + std::to_string(r.group.free_rank) + "," +
             std::to_string(r.group.modp_rank) + "," + csv_field(join(r.basis_labels, ";")) + "\n";
    }
    return s;
}

Json coeff_json(const std::vector<ClosedFormClass>& listing, bool itemized)
{
    if (itemized) {
        Json arr = Json::array();
        for (const auto& c : listing)
            arr.push_back({{"degree", to_json(c.degree)},
                           {"family", family_name(c.family)},
                           {"monomial", to_json(c.monomial)},
                           {"label", to_string(c.monomial)},
                           {"free_rank", c.group.free_rank},
                           {"modp_rank", c.group.modp_rank}});
        return arr;
    }
    std::map<RDegree, std::pair<GroupExpr, std::vector<std::string>>> t;
    for (const auto& c : listing) {
        t[c.degree].first += c.group;
        t[c.degree].second.push_back(to_string(c.monomial));
    }
    Json arr = Json::array();
    for (const auto& [d, v] : t)
        arr.push_back({{"degree", to_json(d)}, {"free_rank", v.first.free_rank}, {"modp_rank", v.first.modp_rank}, {"basis_labels", v.second}});
    return arr;
}

std::string coeff_csv(const std::vector<ClosedFormClass>& listing)
{
    std::string s = "a,c,family,monomial,free_rank,modp_rank\n";
    for (const auto& c : listing)
        s += std::to_string(c.degree.a) + "," + std::to_string(c.degree.c) + "," + family_name(c.family) + "," +
             csv_field(to_string(c.monomial)) + "," + std::to_string(c.group.free_rank) + "," + std::to_string(c.group.modp_rank) + "\n";
    return s;
}

std::string coeff_svg(const std::vector<ClosedFormClass>& listing, const Window& w, i64 p)
{
    std::map<RDegree, Mark> t;
    for (const auto& c : listing) {
        Mark& g = t[c.degree];
        g.d = c.degree;
        g.g += c.group;
        if (!g.tip.empty()) g.tip += "; ";
        g.tip += to_string(c.monomial) + " [" + family_name(c.family) + "]";
    }
    std::vector<Mark> cells;
    for (auto& [d, g] : t) {
        g.tip = to_string(d) + ": " + to_string(g.g, p) + " | " + g.tip;
        cells.push_back(g);
    }
    return grid_svg(cells, w, "coefficients, p=" + std::to_string(p));
}

Json chart_json(const std::vector<ChartCell>& cells)
{
    Json arr = Json::array();
    for (const auto& c : cells)
        arr.push_back({{"degree", to_json(c.degree)},
                       {"glyph", c.glyph == Glyph::Square ? "square" : "dot"},
                       {"free_rank", c.group.free_rank},
                       {"modp_rank", c.group.modp_rank}});
    return arr;
}

std::string chart_csv(const std::vector<ChartCell>& cells)
{
    std::string s = "a,c,glyph,free_rank,modp_rank\n";
    for (const auto& c : cells)
        s += std::to_string(c.degree.a) + "," + std::to_string(c.degree.c) + "," + (c.glyph == Glyph::Square ? "square" : "dot") +
             "," + std::to_string(c.group.free_rank) + "," + std::to_string(c.group.modp_rank) + "\n";
    return s;
}

std::string chart_svg(const std::vector<ChartCell>& cells, const Window& w, i64 p, const std::string& title)
{
    std::vector<Mark> g;
    for (const auto& c : cells) g.push_back({c.degree, c.group, to_string(c.degree) + ": " + to_string(c.group, p)});
    return grid_svg(g, w, title);
}

Json tower_json(const std::vector<TowerEntry>& entries, int n, i64 p, const std::string& pattern)
{
    auto cell = [](const TowerCell& c) {
        return Json{{"label", c.label}, {"kind", kind_name(c.kind)}, {"degree", to_json(c.degree)},
                    {"class_degree", to_json(class_degree(c))}, {"status", status_name(c.status)}, {"column", c.column}};
    };
    Json cells = Json::array(), arrows = Json::array();
    for (const auto& e : entries) {
        cells.push_back(cell(e.cell));
        if (e.kinvariant)
            arrows.push_back({{"name", kname(e.kinvariant->name, e.kinvariant->n)},
                              {"source", e.kinvariant->source.label},
                              {"target", e.kinvariant->target.label},
                              {"degree_shift", to_json(e.kinvariant->degree_shift)}});
    }
    return Json{{"p", p}, {"n", n}, {"pattern", pattern}, {"cells", cells}, {"kinvariants", arrows}};
}

std::string tower_svg(const std::vector<TowerEntry>& entries, int n, i64 p, const std::string& pattern)
{
    constexpr int colw = 200, rowh = 34, top = 40;
    std::map<int, int> rows;
    std::map<std::string, std::pair<int, int>> pos;
    for (const auto& e : entries) {
        const int r = rows[e.cell.column]++;
        pos[e.cell.label] = {20 + e.cell.column * colw, top + r * rowh};
    }
    int maxrow = 0;
    for (const auto& [c, r] : rows) maxrow = std::max(maxrow, r);
    const int width = 20 + static_cast<int>(rows.size()) * colw, height = top + maxrow * rowh + 20;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
      << " " << height << "\" font-family=\"monospace\" font-size=\"9\">\n";
    s << "<title>" << pattern << " pattern, n=" << n << ", p=" << p << "</title>\n";
    s << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    for (const auto& e : entries) {
        const auto [x, y] = pos[e.cell.label];
        const bool dashed = e.cell.status == CellStatus::NegligibleSpawn;
        s << "<g><title>" << xml_escape(e.cell.label + " " + kind_name(e.cell.kind) + " " + to_string(e.cell.degree) + " " +
                                        status_name(e.cell.status))
          << "</title><rect x=\"" << x << "\" y=\"" << y - 12 << "\" width=\"" << colw - 40 << "\" height=\"24\" fill=\""
          << (e.cell.status == CellStatus::Survives ? "#e8f4e8" : "none") << "\" stroke=\"black\""
          << (dashed ? " stroke-dasharray=\"3,2\"" : "") << "/><text x=\"" << x + 4 << "\" y=\"" << y - 2 << "\">"
          << xml_escape(e.cell.label) << "</text><text x=\"" << x + 4 << "\" y=\"" << y + 9 << "\">"
          << xml_escape(kind_name(e.cell.kind) + " " + to_string(e.cell.degree)) << "</text></g>\n";
    }
    for (const auto& e : entries) {
        if (!e.kinvariant) continue;
        const auto [x0, y0] = pos[e.kinvariant->source.label];
        const auto [x1, y1] = pos[e.kinvariant->target.label];
        const int sx = x0 + colw - 40, tx = x1 > x0 ? x1 : x1 + colw - 40;
        s << "<g><title>" << xml_escape(kname(e.kinvariant->name, e.kinvariant->n) + " shift " + to_string(e.kinvariant->degree_shift))
          << "</title><line x1=\"" << sx << "\" y1=\"" << y0 << "\" x2=\"" << tx << "\" y2=\"" << y1
          << "\" stroke=\"black\" marker-end=\"url(#head)\"/></g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

Json theta_json(const MultiValuedFGL& m)
{
    Json th = Json::array();
    for (std::size_t i = 0; i < m.theta.size(); ++i) {
        Json terms = Json::array();
        for (const auto& [e, c] : m.theta[i].terms())
            terms.push_back({{"x", e[0]}, {"y", e[1]}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
        th.push_back({{"i", i + 1}, {"terms", terms}});
    }
    return Json{{"p", m.p}, {"order", m.order}, {"fgl", m.fgl}, {"zeta_free", m.zeta_free_verified}, {"theta", th}};
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

} // namespace bpr
