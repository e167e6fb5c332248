// prefixrec.hpp -- prefix-recognizable graph presentations.
//
// Arcs are answered exactly by a pushdown-style saturation over tree
// walks: a direction symbol descends (pushes), its barred form ascends
// (pops, enabled only when the current vertex ends in that direction).
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "infgraph/automaton.hpp"
#include "infgraph/hypergraph.hpp"

namespace infgraph {

struct PrefixRecPresentation {
    SymbolAlphabet directions;           // tree branch labels, e.g. {A,B}
    SymbolAlphabet Sigma;                // arc labels
    std::map<Symbol, FiniteAutomaton> phi;  // over directions ∪ barred
    FiniteAutomaton restriction;         // over directions

    void validate() const;
    bool vertex_allowed(const Word& u) const { return accepts(restriction, u); }
};

// Walk summaries of one phi automaton: pop(q, d, q') holds when a walk
// from q to q' has net effect "remove one trailing d" while never
// dipping below it; level(q, q') is the net-zero closure.
struct WalkSummaries {
    int n_states = 0;
    std::vector<std::vector<std::vector<char>>> pop;  // [q][dir][q']
    std::vector<std::vector<char>> level;             // [q][q']
};

WalkSummaries saturate(const FiniteAutomaton& phiAut, const SymbolAlphabet& directions);

// Regular set of reachable tree vertices, one automaton per phi-state:
// post_star(...).family accepts z at marked final state f iff
// configuration (f, z) is walk-reachable from (initial, start).
struct PostStarResult {
    // Single automaton; final_for(f) selects the phi-state of interest.
    FiniteAutomaton reach(const int phiState) const;
    FiniteAutomaton base;                 // finals unset
    std::vector<int> state_of;            // base state -> phi state (-1 for prefix spine)
};

PostStarResult post_star(const PrefixRecPresentation& p, const Symbol& a, const Word& start);

bool arc_exists(const PrefixRecPresentation& p, const Word& u, const Symbol& a, const Word& v);

struct PrefWordList {
    std::vector<Word> words;
    bool truncated = false;
};
PrefWordList pr_successors(const PrefixRecPresentation& p, const Word& u, const Symbol& a,
                           std::size_t max_len, std::size_t cap = 10000);

Graph bounded_view(const PrefixRecPresentation& p, std::size_t max_vertex_len,
                   bool parallel = true);

// Plain BFS over (phi-state, tree-vertex) configurations with a length
// cap; independent oracle for the saturation path.
bool arc_exists_bfs(const PrefixRecPresentation& p, const Word& u, const Symbol& a,
                    const Word& v, std::size_t max_cfg_len);

}  // namespace infgraph
