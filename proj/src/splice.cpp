#include "curvelab/splice.hpp"

#include <algorithm>
#include <deque>

namespace curvelab {

std::vector<std::size_t> SpliceDiagram::arrows() const
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].kind == SpliceVertexKind::Arrow)
            out.push_back(v);
    return out;
}

std::vector<std::size_t> SpliceDiagram::stubs() const
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].kind == SpliceVertexKind::Stub)
            out.push_back(v);
    return out;
}

std::size_t SpliceDiagram::arrow_of(std::size_t branch) const
{
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].kind == SpliceVertexKind::Arrow && vertices[v].branch == branch)
            return v;
    throw std::out_of_range("no arrow for branch " + std::to_string(branch + 1));
}

std::optional<BigInt> SpliceDiagram::near_weight(std::size_t e, std::size_t v) const
{
    const SpliceEdge& edge = edges.at(e);
    if (edge.a == v)
        return edge.wa;
    if (edge.b == v)
        return edge.wb;
    throw std::invalid_argument("vertex not incident to edge");
}

namespace {

class SpliceBuilder {
public:
    SpliceDiagram build(const EggersTree& e)
    {
        SpliceVertex root;
        root.root = true;
        root.q = e.root.q;
        root.m = e.root.m;
        root.n = e.root.n;
        d_.vertices.push_back(root);
        visit(0, e.root, true);
        return std::move(d_);
    }

private:
    std::size_t add_vertex(SpliceVertex v)
    {
        d_.vertices.push_back(std::move(v));
        return d_.vertices.size() - 1;
    }

    void visit(std::size_t id, const EggersNode& node, bool is_root)
    {
        const BigInt r = node.r.value_or(1);
        bool has_extra = false;
        for (const EggersNode& child : node.children) {
            has_extra = has_extra || child.extra;
            const BigInt top = child.extra ? r : BigInt(1);
            if (child.leaf) {
                SpliceVertex arrow;
                arrow.kind = SpliceVertexKind::Arrow;
                arrow.branch = child.branch;
                const std::size_t a = add_vertex(arrow);
                d_.edges.push_back({id, a, top, std::nullopt});
                continue;
            }
            SpliceVertex v;
            v.q = child.q;
            v.m = child.m;
            v.n = child.n;
            const BigInt& rc = *child.r;
            if (is_root) {
                v.m_prime = child.m;
                v.derivation = "m' = m = " + child.m.get_str();
            } else {
                const BigInt& mp = *d_.vertices[id].m_prime;
                const Rational step = Rational(child.branch_n, BigInt(1)) * (child.q - node.q);
                if (child.extra) {
                    const BigInt sc = (step * Rational(r, BigInt(1))).num();
                    const BigInt numerator = sc + rc * mp;
                    if (numerator % r != 0)
                        throw InvariantError("splice weight (s + r m')/r' not integral at vertex " +
                                             child.q.to_string());
                    v.m_prime = numerator / r;
                    v.derivation = "m' = (s + r*m'_parent)/r_parent = (" + sc.get_str() + " + " + rc.get_str() +
                                   "*" + mp.get_str() + ")/" + r.get_str() + " = " + v.m_prime->get_str();
                } else {
                    const BigInt sc = step.num();
                    v.m_prime = sc + rc * r * mp;
                    v.derivation = "m' = s + r*r_parent*m'_parent = " + sc.get_str() + " + " + rc.get_str() +
                                   "*" + r.get_str() + "*" + mp.get_str() + " = " + v.m_prime->get_str();
                }
            }
            const BigInt bottom = *v.m_prime;
            const std::size_t c = add_vertex(std::move(v));
            d_.edges.push_back({id, c, top, bottom});
            visit(c, child, false);
        }
        if (!is_root && !has_extra) {
            SpliceVertex stub;
            stub.kind = SpliceVertexKind::Stub;
            const std::size_t s = add_vertex(stub);
            d_.edges.push_back({id, s, r, std::nullopt});
        }
    }

    SpliceDiagram d_;
};

std::vector<std::vector<std::size_t>> incidence(const SpliceDiagram& d)
{
    std::vector<std::vector<std::size_t>> inc(d.vertices.size());
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        inc[d.edges[e].a].push_back(e);
        inc[d.edges[e].b].push_back(e);
    }
    return inc;
}

std::size_t other_end(const SpliceEdge& e, std::size_t v) { return e.a == v ? e.b : e.a; }

}  // namespace

SpliceDiagram build_splice(const EggersTree& e) { return SpliceBuilder().build(e); }

BigInt linking_number(const SpliceDiagram& d, std::size_t leaf_a, std::size_t leaf_b)
{
    auto is_leaf = [&](std::size_t v) { return d.vertices.at(v).kind != SpliceVertexKind::Node; };
    if (leaf_a == leaf_b || !is_leaf(leaf_a) || !is_leaf(leaf_b))
        throw std::invalid_argument("linking_number needs two distinct leaves");

    const auto inc = incidence(d);
    // BFS from leaf_a, remembering the edge used to reach each vertex.
    std::vector<long> via(d.vertices.size(), -1);
    std::vector<bool> seen(d.vertices.size(), false);
    std::deque<std::size_t> queue{leaf_a};
    seen[leaf_a] = true;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : inc[v]) {
            const std::size_t w = other_end(d.edges[e], v);
            if (!seen[w]) {
                seen[w] = true;
                via[w] = static_cast<long>(e);
                queue.push_back(w);
            }
        }
    }
    if (!seen[leaf_b])
        throw InvariantError("splice diagram is disconnected");

    std::vector<std::size_t> path_edges;
    std::vector<std::size_t> interior;
    for (std::size_t v = leaf_b; v != leaf_a;) {
        const auto e = static_cast<std::size_t>(via[v]);
        path_edges.push_back(e);
        v = other_end(d.edges[e], v);
        if (v != leaf_a)
            interior.push_back(v);
    }

    BigInt product = 1;
    for (std::size_t v : interior)
        for (std::size_t e : inc[v])
            if (std::find(path_edges.begin(), path_edges.end(), e) == path_edges.end())
                product *= d.near_weight(e, v).value();
    return product;
}

std::vector<EdgeDeterminant> edge_determinants(const SpliceDiagram& d)
{
    const auto inc = incidence(d);
    auto others = [&](std::size_t v, std::size_t skip) {
        BigInt p = 1;
        for (std::size_t e : inc[v])
            if (e != skip)
                p *= d.near_weight(e, v).value();
        return p;
    };
    std::vector<EdgeDeterminant> out;
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        const SpliceEdge& edge = d.edges[e];
        if (d.vertices[edge.a].kind != SpliceVertexKind::Node || d.vertices[edge.b].kind != SpliceVertexKind::Node)
            continue;
        out.push_back({e, (*edge.wa) * (*edge.wb) - others(edge.a, e) * others(edge.b, e)});
    }
    return out;
}

namespace {

std::string weight_text(const std::optional<BigInt>& w) { return w ? w->get_str() : "-"; }

CanonicalCode splice_code(const SpliceDiagram& d, const std::vector<std::vector<std::size_t>>& inc, std::size_t v,
                          std::size_t parent_edge)
{
    const SpliceVertex& vx = d.vertices[v];
    if (vx.kind == SpliceVertexKind::Arrow)
        return "A";
    if (vx.kind == SpliceVertexKind::Stub)
        return "S";
    std::vector<std::string> parts;
    for (std::size_t e : inc[v]) {
        if (e == parent_edge)
            continue;
        const SpliceEdge& edge = d.edges[e];
        parts.push_back("<" + weight_text(edge.wa) + "," + weight_text(edge.wb) + ">" +
                        splice_code(d, inc, edge.b, e));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "N[";
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? "," : "") + parts[i];
    return out + "]";
}

}  // namespace

CanonicalCode canonical_code(const SpliceDiagram& d)
{
    const auto inc = incidence(d);
    return splice_code(d, inc, 0, static_cast<std::size_t>(-1));
}

std::vector<std::string> bottom_weight_derivations(const SpliceDiagram& d)
{
    std::vector<std::string> out;
    for (const SpliceVertex& v : d.vertices)
        if (v.kind == SpliceVertexKind::Node && !v.root)
            out.push_back("vertex " + v.q.to_string() + ": " + v.derivation);
    return out;
}

}  // namespace curvelab
