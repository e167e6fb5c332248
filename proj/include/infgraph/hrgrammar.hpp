// hrgrammar.hpp -- deterministic hyperedge-replacement graph grammars.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "infgraph/hypergraph.hpp"

namespace infgraph {

struct HRRule {
    std::vector<Vertex> formals;  // pairwise distinct
    Hypergraph rhs;
};

struct HRGrammar {
    std::map<Symbol, int> nonterminals;  // label -> arity
    std::map<Symbol, int> terminals;     // arity 1 (colour) or 2 (arc)
    Hypergraph axiom;
    std::map<Symbol, HRRule> rules;      // one rule per non-terminal

    bool is_nonterminal(const Symbol& s) const { return nonterminals.count(s) > 0; }
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

// Determinism, arity coherence, rule coverage. Never throws.
ValidationReport validate(const HRGrammar& g);

struct GenerationState {
    Hypergraph current;
    int level = 0;
    long freshCounter = 0;
};

GenerationState initial_state(const HRGrammar& g);

// Replaces one non-terminal hyperarc by a fresh copy of its rule RHS.
// Fresh vertices are named "<parent>/<local>#<counter>" so repeated
// runs are bit-identical.
GenerationState rewrite_step(const HRGrammar& g, const GenerationState& s,
                             const Hyperarc& which);

// Rewrites every non-terminal hyperarc exactly once; level increments.
GenerationState parallel_step(const HRGrammar& g, const GenerationState& s);

// Terminal arcs and colours of the level-n hypergraph.
Graph generate(const HRGrammar& g, int n);

// Interface summaries for reachability across rule boundaries.
struct ReachSummary {
    // per non-terminal: attachment pairs (i,j) with a terminal path
    // x_i ->* x_j inside the generated subtree
    std::map<Symbol, std::set<std::pair<int, int>>> reach;
    // attachments reachable from a source-coloured vertex created
    // strictly inside the subtree
    std::map<Symbol, std::set<int>> fromSource;
    int iterations = 0;
};

ReachSummary reachability_summary(const HRGrammar& g, const Symbol& sourceColour,
                                  bool symmetric);

// Same generated graph plus newColour on exactly the vertices
// reachable from a sourceColour vertex. `symmetric` uses the
// undirected closure instead of forward reachability.
HRGrammar accessible_colouring(const HRGrammar& g, const Symbol& sourceColour,
                               const Symbol& newColour, bool symmetric = false,
                               int* iterations_out = nullptr);

// Grammar generating the induced subgraph on coloured vertices.
HRGrammar colour_restriction(const HRGrammar& g, const Symbol& colour);

}  // namespace infgraph
