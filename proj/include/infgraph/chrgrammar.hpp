// chrgrammar.hpp -- contextual graph rewriting and CHR-grammars.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "infgraph/hypergraph.hpp"
#include "infgraph/hrgrammar.hpp"
#include "infgraph/rational.hpp"

namespace infgraph {

// A rule H_c ∪ f x1..xr -> H_c ∪ H. The context carries only
// contextual/terminal hyperarcs; rhs may share vertices with the
// context and the formal hyperarc, other rhs vertices are fresh.
struct ContextualRule {
    Hypergraph context;
    Hyperarc formal;  // non-terminal hyperarc over distinct formal vertices
    Hypergraph rhs;
};

// Infinite axiom: the complete |directions|-ary tree with a single
// non-terminal placed on the root (all attachments at the root).
struct TreeAxiom {
    SymbolAlphabet directions;
    Symbol rootNonTerminal;
    int arity = 2;
};

// Finite-hypergraph-presented HR axiom: the grammar generates the
// contextual skeleton, `placement` adds the single non-terminal.
struct HRAxiom {
    HRGrammar grammar;
    Hyperarc placement;
};

struct CHRGrammar {
    std::map<Symbol, int> contextual;
    std::map<Symbol, int> nonterminals;
    std::map<Symbol, int> terminals;
    std::variant<Hypergraph, TreeAxiom, HRAxiom> axiom;
    std::vector<ContextualRule> rules;  // tried in order per occurrence

    bool is_nonterminal(const Symbol& s) const { return nonterminals.count(s) > 0; }
    void validate() const;
};

// All morphism extensions of `occurrence`'s attachment map over the
// rule context into g. Deterministic axioms admit at most one; the
// engine asserts this. Sets *touched_frontier when a failed extension
// needed an arc at a frontier vertex.
std::vector<std::map<Vertex, Vertex>> find_matches(const Hypergraph& g,
                                                   const ContextualRule& r,
                                                   const Hyperarc& occurrence,
                                                   const std::set<Vertex>* frontier = nullptr,
                                                   bool* touched_frontier = nullptr);

struct CHRState {
    Hypergraph current;
    std::set<Vertex> frontier;  // axiom vertices whose arcs are cut off
    long freshCounter = 0;
    int level = 0;
    bool frontierTruncated = false;
};

CHRState chr_initial(const CHRGrammar& g, int axiom_depth);
CHRState chr_parallel_step(const CHRGrammar& g, const CHRState& s);

struct CHRGenResult {
    Graph graph;  // terminal arcs and colours after n steps
    bool frontierTruncated = false;
    Hypergraph full;  // including non-terminal and contextual arcs
};

CHRGenResult chr_generate(const CHRGrammar& g, int steps, int axiom_depth);

// Rational presentation -> CHR grammar over the complete |X|-ary tree.
// Requires edge words of length <= 1 (normalize_edges first); a vertex
// restriction is folded into the transducer.
CHRGrammar from_rational(const RationalGraphPresentation& p);

bool is_tree_separated(const CHRGrammar& g);

// Tree-separated CHR grammar over a complete-tree axiom back to a
// rational presentation on tree addresses. Refuses (with a diagnostic
// in the exception) grammars outside the supported encoding.
RationalGraphPresentation to_rational(const CHRGrammar& g);

// ---- PCP ----

struct PCPInstance {
    std::vector<std::pair<std::string, std::string>> pairs;  // over {a,b}
    void validate() const;
};

// Contextual system whose generation produces a '#' arc between the
// axiom vertices "0" and "1" iff the instance has a solution.
CHRGrammar pcp_encode(const PCPInstance& inst);

// Brute-force oracle: does some index sequence of length <= max_indices
// solve the instance?
bool pcp_solvable(const PCPInstance& inst, std::size_t max_indices);

}  // namespace infgraph
