#pragma once

// Splice diagram of a plane curve germ built from its Eggers tree, with
// linking numbers and edge determinants as consistency checks.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/carrousel_tree.hpp"

namespace curvelab {

enum class SpliceVertexKind { Node, Arrow, Stub };

struct SpliceVertex {
    SpliceVertexKind kind = SpliceVertexKind::Node;
    bool root = false;
    // Node data from the originating Eggers vertex.
    Rational q{1};
    BigInt m = 1;
    BigInt n = 1;
    std::optional<BigInt> m_prime;      // bottom weight of the edge above; absent at the root
    std::optional<std::size_t> branch;  // arrows
    std::string derivation;             // how m_prime was obtained
};

// Edge from upper vertex `a` to lower vertex `b`; a weight is present
// exactly at ends incident to a Node.
struct SpliceEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    std::optional<BigInt> wa;
    std::optional<BigInt> wb;
};

struct SpliceDiagram {
    std::vector<SpliceVertex> vertices;  // vertex 0 is the root
    std::vector<SpliceEdge> edges;

    [[nodiscard]] std::vector<std::size_t> arrows() const;
    [[nodiscard]] std::vector<std::size_t> stubs() const;
    // Arrow vertex of a curve branch.
    [[nodiscard]] std::size_t arrow_of(std::size_t branch) const;
    // Weight at vertex v's end of edge e.
    [[nodiscard]] std::optional<BigInt> near_weight(std::size_t e, std::size_t v) const;
};

// Throws InvariantError when the flagged-edge division is inexact.
SpliceDiagram build_splice(const EggersTree& e);

BigInt linking_number(const SpliceDiagram& d, std::size_t leaf_a, std::size_t leaf_b);

struct EdgeDeterminant {
    std::size_t edge;
    BigInt value;
};
std::vector<EdgeDeterminant> edge_determinants(const SpliceDiagram& d);

CanonicalCode canonical_code(const SpliceDiagram& d);

// How each bottom weight was obtained, one line per non-root Node.
std::vector<std::string> bottom_weight_derivations(const SpliceDiagram& d);

}  // namespace curvelab
