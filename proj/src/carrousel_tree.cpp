#include "curvelab/carrousel_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace curvelab {

namespace {

CarrouselNode build_node(const ContactMatrix& q, std::vector<std::size_t> cls)
{
    if (cls.size() == 1)
        return {ExtendedRational::infinity(), std::move(cls), {}};

    ExtendedRational v = ExtendedRational::infinity();
    for (std::size_t a = 0; a < cls.size(); ++a)
        for (std::size_t b = a + 1; b < cls.size(); ++b)
            v = std::min(v, q.at(cls[a], cls[b]));

    // The classes of q(j,k) > v; transitivity is the ultrametric property.
    std::vector<bool> taken(cls.size(), false);
    CarrouselNode node{v, cls, {}};
    for (std::size_t a = 0; a < cls.size(); ++a) {
        if (taken[a])
            continue;
        std::vector<std::size_t> child{cls[a]};
        taken[a] = true;
        for (std::size_t b = a + 1; b < cls.size(); ++b)
            if (!taken[b] && q.at(cls[a], cls[b]) > v) {
                taken[b] = true;
                child.push_back(cls[b]);
            }
        node.children.push_back(build_node(q, std::move(child)));
    }
    return node;
}

std::string branch_signature(const CarrouselNode& node, const std::vector<long>& sheet_branch)
{
    std::vector<long> b;
    for (std::size_t s : node.sheets)
        b.push_back(s < sheet_branch.size() ? sheet_branch[s] : -1);
    std::sort(b.begin(), b.end());
    std::string sig;
    for (long x : b)
        sig += std::to_string(x) + ",";
    return sig;
}

std::optional<std::size_t> leaf_branch(const CarrouselNode& leaf, const std::vector<long>& sheet_branch)
{
    const std::size_t s = leaf.sheets.front();
    if (s < sheet_branch.size() && sheet_branch[s] >= 0)
        return static_cast<std::size_t>(sheet_branch[s]);
    return std::nullopt;
}

[[noreturn]] void structure_violation(const Rational& q, const std::string& detail)
{
    throw InvariantError("carrousel structure violation at vertex " + q.to_string() + ": " + detail);
}

// Selects which children survive the r-fold grouping; the second member
// flags the extra subtree.
std::vector<std::pair<const CarrouselNode*, bool>> group_children(const CarrouselNode& node, const BigInt& r,
                                                                   bool exempt,
                                                                   const std::vector<long>& sheet_branch)
{
    std::vector<std::pair<const CarrouselNode*, bool>> kept;
    if (exempt || r == 1) {
        for (const CarrouselNode& c : node.children)
            kept.emplace_back(&c, false);
        return kept;
    }

    // Isomorphism classes by canonical code, refined by the branches the
    // subtree carries so every kept representative keeps its branch labels.
    std::map<CanonicalCode, std::map<std::string, std::vector<const CarrouselNode*>>> classes;
    for (const CarrouselNode& c : node.children)
        classes[canonical_code(c)][branch_signature(c, sheet_branch)].push_back(&c);

    const Rational& q = node.q.value();
    int extras = 0;
    for (const auto& [code, refined] : classes) {
        BigInt count = 0;
        for (const auto& [sig, members] : refined)
            count += static_cast<unsigned long>(members.size());
        const BigInt rem = count % r;
        if (rem != 0 && rem != 1)
            structure_violation(q, "isomorphism class of size " + count.get_str() + " with r = " + r.get_str());
        extras += rem == 1;
    }
    if (extras > 1)
        structure_violation(q, "more than one exceptional subtree with r = " + r.get_str());

    int refined_extras = 0;
    for (const auto& [code, refined] : classes) {
        for (const auto& [sig, members] : refined) {
            const BigInt size = static_cast<unsigned long>(members.size());
            const BigInt groups = size / r;
            const BigInt rem = size % r;
            if (rem != 0 && rem != 1)
                structure_violation(q, "branch-labelled group of size " + size.get_str() + " with r = " +
                                           r.get_str());
            std::size_t at = 0;
            for (BigInt g = 0; g < groups; ++g) {
                kept.emplace_back(members[at], false);
                at += r.get_ui();
            }
            if (rem == 1) {
                ++refined_extras;
                kept.emplace_back(members.back(), true);
            }
        }
    }
    if (refined_extras != extras)
        structure_violation(q, "exceptional subtree not determined by branch labels");
    return kept;
}

// parent_n is the path lcm of denominators; parent_branch_n and
// parent_base are the parent's actual sheet denominators after and before
// its own exponent.
EggersNode reduce(const CarrouselNode& node, const Rational& parent_q, const BigInt& parent_n,
                  const BigInt& parent_branch_n, const BigInt& parent_base, bool is_root, bool extra,
                  const std::vector<long>& sheet_branch)
{
    EggersNode out;
    out.extra = extra;
    if (node.is_leaf()) {
        out.leaf = true;
        out.branch = leaf_branch(node, sheet_branch);
        return out;
    }
    const Rational& q = node.q.value();
    out.q = q;
    BigInt base = 1;
    if (is_root) {
        out.n = q.den();
        out.branch_n = q.den();
    } else {
        mpz_lcm(out.n.get_mpz_t(), parent_n.get_mpz_t(), q.den().get_mpz_t());
        base = extra ? parent_base : parent_branch_n;
        mpz_lcm(out.branch_n.get_mpz_t(), base.get_mpz_t(), q.den().get_mpz_t());
        out.r = out.branch_n / base;
        const Rational s = Rational(out.n, BigInt(1)) * (q - parent_q);
        if (!s.is_integer() || s.sign() <= 0)
            throw InvariantError("s_v is not a positive integer at vertex " + q.to_string());
        out.s = s.num();
    }
    out.m = (q * Rational(out.n, BigInt(1))).num();

    for (const auto& [child, flagged] : group_children(node, out.r.value_or(1), is_root, sheet_branch))
        out.children.push_back(reduce(*child, q, out.n, out.branch_n, base, false, flagged, sheet_branch));
    return out;
}

}  // namespace

CarrouselTree build_carrousel_tree(const ContactMatrix& q, std::vector<long> sheet_branch)
{
    if (q.size() == 0)
        throw InvariantError("empty contact matrix");
    if (const auto bad = verify_ultrametric(q); !bad.empty()) {
        const Triple& t = bad.front();
        throw InvariantError("ultrametric violation (" + std::to_string(bad.size()) + " triples, first " +
                             std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
    }
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t k = j + 1; k < q.size(); ++k)
            if (q.at(j, k) < ExtendedRational(Rational{1}))
                throw InvariantError("contact exponent below 1 (sheet tangent to the y-axis)");

    std::vector<std::size_t> all(q.size());
    std::iota(all.begin(), all.end(), 0);
    CarrouselNode top = build_node(q, all);

    CarrouselTree tree;
    tree.sheet_branch = std::move(sheet_branch);
    if (top.q == ExtendedRational(Rational{1})) {
        tree.root = std::move(top);
    } else {
        tree.root = CarrouselNode{Rational{1}, all, {}};
        tree.root.children.push_back(std::move(top));
    }
    return tree;
}

CarrouselTree build_carrousel_tree(const QMap& q)
{
    std::vector<long> sheet_branch;
    for (const Sheet& s : q.sheets)
        sheet_branch.push_back(static_cast<long>(s.branch));
    return build_carrousel_tree(q.q, std::move(sheet_branch));
}

EggersTree eggers_reduce(const CarrouselTree& t)
{
    return {reduce(t.root, Rational{1}, BigInt(1), BigInt(1), BigInt(1), true, false, t.sheet_branch)};
}

CanonicalCode canonical_code(const CarrouselNode& node)
{
    if (node.is_leaf())
        return "L";
    std::vector<CanonicalCode> codes;
    for (const CarrouselNode& c : node.children)
        codes.push_back(canonical_code(c));
    std::sort(codes.begin(), codes.end());
    CanonicalCode out = "(" + node.q.to_string() + ":";
    for (std::size_t i = 0; i < codes.size(); ++i)
        out += (i ? "," : "") + codes[i];
    return out + ")";
}

CanonicalCode canonical_code(const CarrouselTree& t) { return canonical_code(t.root); }

CanonicalCode canonical_code(const EggersNode& node)
{
    const std::string flag = node.extra ? "*" : "";
    if (node.leaf)
        return "L" + flag;
    std::vector<CanonicalCode> codes;
    for (const EggersNode& c : node.children)
        codes.push_back(canonical_code(c));
    std::sort(codes.begin(), codes.end());
    CanonicalCode out = "(" + node.m.get_str() + "/" + node.n.get_str();
    if (node.r)
        out += ",r" + node.r->get_str() + ",s" + node.s->get_str();
    out += flag + ":";
    for (std::size_t i = 0; i < codes.size(); ++i)
        out += (i ? "," : "") + codes[i];
    return out + ")";
}

CanonicalCode canonical_code(const EggersTree& t) { return canonical_code(t.root); }

std::size_t leaf_count(const CarrouselNode& node)
{
    if (node.is_leaf())
        return 1;
    std::size_t n = 0;
    for (const CarrouselNode& c : node.children)
        n += leaf_count(c);
    return n;
}

CarrouselTree carrousel_tree(const Curve& c) { return build_carrousel_tree(q_map(c)); }

bool equivalent(const Curve& c1, const Curve& c2)
{
    return canonical_code(carrousel_tree(c1)) == canonical_code(carrousel_tree(c2));
}

namespace {

std::string set_text(const std::vector<Rational>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].to_string();
    return s + "}";
}

std::vector<std::string> characteristic_summary(const Curve& c)
{
    std::vector<std::string> out;
    for (const Branch& b : c.branches())
        out.push_back(set_text(characteristic_exponents(b)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> coincidences(const Curve& c)
{
    std::vector<Rational> out;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b)
            out.push_back(coincidence_exponent(c, a, b));
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "; " : "") + v[i];
    return s;
}

}  // namespace

std::string explain_difference(const Curve& c1, const Curve& c2)
{
    if (equivalent(c1, c2))
        return {};
    if (c1.size() != c2.size())
        return "number of branches " + std::to_string(c1.size()) + " vs " + std::to_string(c2.size());
    const auto ch1 = characteristic_summary(c1);
    const auto ch2 = characteristic_summary(c2);
    if (ch1 != ch2)
        return "characteristic exponents " + join(ch1) + " vs " + join(ch2);
    const auto co1 = coincidences(c1);
    const auto co2 = coincidences(c2);
    if (co1 != co2)
        return "coincidence exponents " + set_text(co1) + " vs " + set_text(co2);
    return "carrousel trees differ";
}

}  // namespace curvelab
