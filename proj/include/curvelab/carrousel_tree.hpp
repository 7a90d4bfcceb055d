#pragma once

// Combinatorial carrousel tree built from a q-map, its Eggers reduction, and
// canonical codes deciding embedded-topology (outer-Lipschitz) equivalence.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/contact.hpp"
#include "curvelab/puiseux.hpp"

namespace curvelab {

struct CarrouselNode {
    ExtendedRational q;               // infinity exactly at leaves
    std::vector<std::size_t> sheets;  // sorted sheet indices of this class
    std::vector<CarrouselNode> children;

    [[nodiscard]] bool is_leaf() const { return q.is_infinite(); }
};

struct CarrouselTree {
    CarrouselNode root;
    // Branch of each sheet index; -1 entries when unknown (numeric recovery).
    std::vector<long> sheet_branch;
};

struct EggersNode {
    bool leaf = false;
    std::optional<std::size_t> branch;  // leaves with a known branch
    Rational q{1};
    BigInt m = 1;
    BigInt n = 1;  // lcm of the denominators of the weights on the path to the root
    // Denominator of the sheet series of this subtree truncated at q. It
    // differs from n below an extra edge, whose sheets lack the parent's term.
    BigInt branch_n = 1;
    // branch_n over the same denominator just below q; absent at the root
    // and at leaves.
    std::optional<BigInt> r;
    std::optional<BigInt> s;
    bool extra = false;  // the edge from the parent carries the label r_parent
    std::vector<EggersNode> children;
};

struct EggersTree {
    EggersNode root;
};

using CanonicalCode = std::string;

// Precondition: q passes verify_ultrametric (throws InvariantError otherwise).
CarrouselTree build_carrousel_tree(const ContactMatrix& q, std::vector<long> sheet_branch = {});
CarrouselTree build_carrousel_tree(const QMap& q);

// Throws InvariantError("carrousel structure violation") when the children
// of a vertex are not r_v-fold groups plus at most one extra subtree.
EggersTree eggers_reduce(const CarrouselTree& t);

CanonicalCode canonical_code(const CarrouselNode& node);
CanonicalCode canonical_code(const CarrouselTree& t);
CanonicalCode canonical_code(const EggersNode& node);
CanonicalCode canonical_code(const EggersTree& t);

std::size_t leaf_count(const CarrouselNode& node);

CarrouselTree carrousel_tree(const Curve& c);
bool equivalent(const Curve& c1, const Curve& c2);
// Human-readable reason for non-equivalence, empty when equivalent.
std::string explain_difference(const Curve& c1, const Curve& c2);

}  // namespace curvelab
