// hypergraph.hpp -- explicit finite hypergraphs and graph operations.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infgraph/alphabet.hpp"
#include "infgraph/automaton.hpp"

namespace infgraph {

using Vertex = std::string;

struct Hyperarc {
    Symbol label;
    std::vector<Vertex> verts;
    auto operator<=>(const Hyperarc&) const = default;
};

// Finite set of hyperarcs with set semantics. Vertices are opaque
// strings; isolated vertices may be declared explicitly.
struct Hypergraph {
    std::set<Vertex> vertices;
    std::set<Hyperarc> arcs;

    void add(Hyperarc h);
    void add_arc(const Vertex& s, const Symbol& a, const Vertex& t);
    void add_colour(const Symbol& c, const Vertex& v);

    // Binary hyperarcs only.
    std::vector<Hyperarc> binary_arcs() const;
    // Unary hyperarcs (colours).
    std::vector<Hyperarc> colours() const;

    bool operator==(const Hypergraph& o) const = default;
};

// A Graph is a Hypergraph whose arcs have arity 1 or 2; enforced where
// it matters.
using Graph = Hypergraph;

bool is_deterministic(const Graph& g);

// Tree of all paths from root of length <= depth. Path vertices are
// encoded root.a1.v1.a2.v2...
Graph unfold(const Graph& g, const Vertex& root, int depth);

struct IsoResult {
    bool found = false;
    std::map<Vertex, Vertex> witness;
};

IsoResult isomorphic(const Graph& g1, const Graph& g2);

// DOT output with lexicographic vertex ordering. Colours render as
// vertex annotations.
std::string to_dot(const Graph& g);

// phi maps arc labels to automata over direction symbols and their
// bars (a bar is spelled with a trailing '~'). An arc x -d-> y is
// produced whenever some word of L(phi(d)) labels a path from x to y
// inside g, walking barred letters backwards. Exact only for paths
// staying inside the explicit view.
Graph inverse_substitution_explicit(const Graph& g,
                                    const std::map<Symbol, FiniteAutomaton>& phi,
                                    const std::optional<FiniteAutomaton>& restriction,
                                    const Vertex& root = "");

// Alphabet D ∪ D̄ with bars spelled "<d>~".
SymbolAlphabet barred_alphabet(const SymbolAlphabet& directions);
bool is_barred(const Symbol& s);
Symbol strip_bar(const Symbol& s);

}  // namespace infgraph
