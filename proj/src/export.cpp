#include "curvelab/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace curvelab {

Json json_integer(const BigInt& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

Json json_rational(const Rational& r) { return Json::array({json_integer(r.num()), json_integer(r.den())}); }

Json json_extended(const ExtendedRational& q) { return q.is_infinite() ? Json("inf") : json_rational(q.value()); }

Json json_float(double v)
{
    if (!std::isfinite(v))
        return v > 0 ? Json("inf") : Json(nullptr);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::stod(buf);
}

Json to_json(const QMap& q)
{
    Json sheets = Json::array();
    for (const Sheet& s : q.sheets)
        sheets.push_back({{"branch", s.branch + 1}, {"k", s.k}});
    Json rows = Json::array();
    for (std::size_t j = 0; j < q.q.size(); ++j) {
        Json row = Json::array();
        for (std::size_t k = 0; k < q.q.size(); ++k)
            row.push_back(json_extended(q.q.at(j, k)));
        rows.push_back(std::move(row));
    }
    return {{"sheets", sheets}, {"q", rows}};
}

namespace {

Json carrousel_node(const CarrouselNode& n, const std::vector<long>& sheet_branch)
{
    Json out = {{"q", json_extended(n.q)}};
    if (n.is_leaf()) {
        const std::size_t s = n.sheets.front();
        out["sheet"] = s;
        if (s < sheet_branch.size() && sheet_branch[s] >= 0)
            out["branch"] = sheet_branch[s] + 1;
    }
    Json kids = Json::array();
    for (const CarrouselNode& c : n.children)
        kids.push_back(carrousel_node(c, sheet_branch));
    out["children"] = kids;
    return out;
}

Json eggers_node(const EggersNode& n)
{
    Json out;
    if (n.leaf)
        out["q"] = "inf";
    else
        out["q"] = Json::array({json_integer(n.m), json_integer(n.n)});
    if (n.r)
        out["r"] = json_integer(*n.r);
    if (n.s)
        out["s"] = json_integer(*n.s);
    if (n.extra)
        out["extra"] = true;
    if (n.leaf && n.branch)
        out["branch"] = *n.branch + 1;
    Json kids = Json::array();
    for (const EggersNode& c : n.children)
        kids.push_back(eggers_node(c));
    out["children"] = kids;
    return out;
}

std::string kind_name(SpliceVertexKind k)
{
    switch (k) {
    case SpliceVertexKind::Node:
        return "node";
    case SpliceVertexKind::Arrow:
        return "arrow";
    case SpliceVertexKind::Stub:
        return "stub";
    }
    return {};
}

}  // namespace

Json to_json(const CarrouselTree& t) { return carrousel_node(t.root, t.sheet_branch); }

Json to_json(const EggersTree& t) { return eggers_node(t.root); }

Json to_json(const SpliceDiagram& d)
{
    Json vertices = Json::array();
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
        const SpliceVertex& x = d.vertices[v];
        Json j = {{"id", v}, {"kind", kind_name(x.kind)}};
        if (x.kind == SpliceVertexKind::Node) {
            j["q"] = json_rational(x.q);
            j["m"] = json_integer(x.m);
            j["n"] = json_integer(x.n);
        }
        if (x.branch)
            j["branch"] = *x.branch + 1;
        vertices.push_back(std::move(j));
    }
    Json edges = Json::array();
    for (const SpliceEdge& e : d.edges) {
        Json j = {{"a", e.a}, {"b", e.b}};
        j["wa"] = e.wa ? json_integer(*e.wa) : Json(nullptr);
        j["wb"] = e.wb ? json_integer(*e.wb) : Json(nullptr);
        edges.push_back(std::move(j));
    }
    Json arrows = Json::array();
    for (std::size_t v : d.arrows())
        arrows.push_back(*d.vertices[v].branch + 1);
    Json stubs = Json::array();
    for (std::size_t v : d.stubs())
        stubs.push_back(v);
    return {{"vertices", vertices}, {"edges", edges}, {"arrows", arrows}, {"stubs", stubs}};
}

Json to_json(const GenericityVerdict& v)
{
    Json out = {{"generic", v.generic()}};
    if (v.kind == GenericityVerdict::Kind::FailsBranch)
        out["failure"] = {{"type", "branch"}, {"branch", v.branch + 1}, {"exponent", v.exponent}};
    else if (v.kind == GenericityVerdict::Kind::FailsPair)
        out["failure"] = {{"type", "pair"},
                          {"branch", v.branch + 1},
                          {"other_branch", v.other_branch + 1},
                          {"order", v.order},
                          {"residue", v.residue},
                          {"exponent", v.exponent}};
    else
        out["failure"] = nullptr;
    return out;
}

namespace {

Json poly_json(const std::vector<PolyTerm>& terms)
{
    Json out = Json::array();
    for (const PolyTerm& t : terms) {
        Json j = {{"rate", json_rational(t.rate)}, {"coeff", t.coeff.to_string()}};
        if (t.inserted)
            j["inserted"] = true;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace

Json to_json(const PieceDecomposition& d)
{
    Json pieces = Json::array();
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        Json j = {{"id", i}, {"kind", to_string(p.kind)}, {"sector", p.sector}, {"rate", json_rational(p.rate)},
                  {"orbit", p.orbit}};
        j["parent"] = p.parent ? Json(*p.parent) : Json(nullptr);
        j["children"] = p.children;
        j["sheets"] = p.sheets;
        if (p.kind != PieceKind::B1)
            j["center"] = poly_json(p.center);
        if (p.kind == PieceKind::A || p.kind == PieceKind::D) {
            j["outer_rate"] = json_rational(p.outer_rate);
            j["radius"] = json_rational(p.radius);
        }
        if (p.kind == PieceKind::B) {
            Json coeffs = Json::array();
            for (const TaggedScalar& a : p.coefficients)
                coeffs.push_back(a.to_string());
            j["coefficients"] = coeffs;
            j["alpha"] = json_rational(p.alpha);
            j["beta"] = json_rational(p.beta);
            j["gamma"] = json_rational(p.gamma);
            j["center_occupied"] = p.center_occupied;
        }
        pieces.push_back(std::move(j));
    }
    return {{"params",
             {{"eps0", json_rational(d.params.eps0)},
              {"eta", json_rational(d.params.eta)},
              {"R", json_rational(d.params.R)},
              {"shear", d.params.shear}}},
            {"counts",
             {{"B1", d.count(PieceKind::B1)},
              {"B", d.count(PieceKind::B)},
              {"A", d.count(PieceKind::A)},
              {"D", d.count(PieceKind::D)}}},
            {"pieces", pieces}};
}

Json to_json(const QMapEstimate& e, const std::vector<Sheet>& sheets)
{
    Json s = Json::array();
    for (const Sheet& x : sheets)
        s.push_back({{"branch", x.branch + 1}, {"k", x.k}});
    Json rows = Json::array();
    for (std::size_t j = 0; j < e.size; ++j) {
        Json row = Json::array();
        for (std::size_t k = 0; k < e.size; ++k)
            row.push_back(json_float(e.at(j, k)));
        rows.push_back(std::move(row));
    }
    return {{"sheets", s}, {"q", rows}, {"residual_sum", json_float(e.residual_sum)}};
}

Json to_json(const RatioStats& s)
{
    Json pairs = Json::array();
    for (const RatioPair& p : s.pairs)
        pairs.push_back({{"branch1", p.branch1 + 1},
                         {"branch2", p.branch2 + 1},
                         {"j", p.j},
                         {"l", p.l},
                         {"i0", json_rational(p.i0)},
                         {"predicted", json_float(p.predicted)},
                         {"fitted", json_float(p.fitted)},
                         {"min", json_float(p.min)},
                         {"max", json_float(p.max)}});
    return {{"pairs", pairs}};
}

namespace {

void carrousel_dot(std::ostringstream& os, const CarrouselNode& n, const std::vector<long>& sheet_branch,
                   std::size_t& next, std::size_t id)
{
    if (n.is_leaf()) {
        const std::size_t s = n.sheets.front();
        std::string label = "sheet " + std::to_string(s);
        if (s < sheet_branch.size() && sheet_branch[s] >= 0)
            label = "b" + std::to_string(sheet_branch[s] + 1);
        os << "  n" << id << " [shape=point, xlabel=\"" << label << "\"];\n";
        return;
    }
    os << "  n" << id << " [label=\"" << n.q.to_string() << "\"];\n";
    for (const CarrouselNode& c : n.children) {
        const std::size_t cid = next++;
        carrousel_dot(os, c, sheet_branch, next, cid);
        os << "  n" << id << " -> n" << cid << ";\n";
    }
}

void eggers_dot(std::ostringstream& os, const EggersNode& n, std::size_t& next, std::size_t id)
{
    if (n.leaf) {
        os << "  n" << id << " [shape=point";
        if (n.branch)
            os << ", xlabel=\"b" << *n.branch + 1 << "\"";
        os << "];\n";
        return;
    }
    const std::string q = n.n == 1 ? n.m.get_str() : n.m.get_str() + "/" + n.n.get_str();
    os << "  n" << id << " [label=\"" << q << "\"];\n";
    for (const EggersNode& c : n.children) {
        const std::size_t cid = next++;
        eggers_dot(os, c, next, cid);
        os << "  n" << id << " -> n" << cid;
        if (c.extra)
            os << " [label=\"" << n.r.value_or(1).get_str() << "\", style=dashed]";
        os << ";\n";
    }
}

}  // namespace

std::string to_dot(const CarrouselTree& t)
{
    std::ostringstream os;
    os << "digraph carrousel {\n  node [shape=circle];\n";
    std::size_t next = 1;
    carrousel_dot(os, t.root, t.sheet_branch, next, 0);
    os << "}\n";
    return os.str();
}

std::string to_dot(const EggersTree& t)
{
    std::ostringstream os;
    os << "digraph eggers {\n  node [shape=circle];\n";
    std::size_t next = 1;
    eggers_dot(os, t.root, next, 0);
    os << "}\n";
    return os.str();
}

std::string to_dot(const SpliceDiagram& d)
{
    std::ostringstream os;
    os << "graph splice {\n  node [shape=point];\n";
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
        const SpliceVertex& x = d.vertices[v];
        os << "  v" << v;
        if (x.kind == SpliceVertexKind::Node)
            os << " [shape=circle, width=0.15, label=\"\", xlabel=\"" << x.q.to_string() << "\"]";
        else if (x.kind == SpliceVertexKind::Arrow)
            os << " [shape=none, label=\"b" << *x.branch + 1 << "\"]";
        os << ";\n";
    }
    for (const SpliceEdge& e : d.edges) {
        const SpliceVertexKind kb = d.vertices[e.b].kind;
        os << "  v" << e.a << " -- v" << e.b << " [";
        if (kb == SpliceVertexKind::Node)
            os << "label=\"(" << e.wa->get_str() << "," << e.wb->get_str() << ")\", taillabel=\"" << e.wa->get_str()
               << "\", headlabel=\"" << e.wb->get_str() << "\"";
        else
            os << "taillabel=\"" << e.wa->get_str() << "\", class=\"" << (kb == SpliceVertexKind::Arrow ? "arrow" : "stub")
               << "\"" << (kb == SpliceVertexKind::Arrow ? ", dir=forward, arrowhead=normal" : "");
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace curvelab
