// rational.hpp -- rational graph presentations and their queries.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "infgraph/automaton.hpp"
#include "infgraph/hypergraph.hpp"
#include "infgraph/transducer.hpp"

namespace infgraph {

struct RationalGraphPresentation {
    LabelledTransducer t;
    std::optional<FiniteAutomaton> vertexRestriction;  // over X

    const SymbolAlphabet& X() const { return t.X; }
    const SymbolAlphabet& Sigma() const { return t.Sigma; }
    bool vertex_allowed(const Word& u) const;
};

struct WordList {
    std::vector<Word> words;
    bool truncated = false;
};

inline constexpr std::size_t kDefaultSuccessorCap = 10000;

bool arc_exists(const RationalGraphPresentation& p, const Word& u, const Symbol& a,
                const Word& v);

WordList successors(const RationalGraphPresentation& p, const Word& u, const Symbol& a,
                    std::size_t max_len, std::size_t cap = kDefaultSuccessorCap);
WordList predecessors(const RationalGraphPresentation& p, const Word& v, const Symbol& a,
                      std::size_t max_len, std::size_t cap = kDefaultSuccessorCap);

// Explicit graph on all restriction-satisfying vertices of length
// <= max_vertex_len, with every arc between them. `parallel` switches
// the per-source loop to the OpenMP kernel; both paths produce
// identical graphs (the serial one is the reference used in tests).
Graph bounded_view(const RationalGraphPresentation& p, std::size_t max_vertex_len,
                   bool parallel = true);

struct TraceQuery {
    FiniteAutomaton I;
    FiniteAutomaton F;
    std::vector<Symbol> word;
};

bool trace_member(const RationalGraphPresentation& p, const TraceQuery& q);

std::vector<std::vector<Symbol>> trace_language_sample(const RationalGraphPresentation& p,
                                                       const FiniteAutomaton& I,
                                                       const FiniteAutomaton& F,
                                                       std::size_t max_len);

RationalGraphPresentation compose_graphs(const RationalGraphPresentation& p1,
                                         const RationalGraphPresentation& p2);

// phi maps new labels to finite sets of words over Sigma ∪ Sigma-bar
// (bars spelled with trailing '~'). The empty word contributes the
// identity relation.
RationalGraphPresentation inverse_finite_substitution(
    const RationalGraphPresentation& p, const std::map<Symbol, std::vector<Word>>& phi);

// Edge-identifier words of all simple (no repeated edge) accepting
// paths for label a; the h(a) of the finite-substitution argument.
struct SimplePath {
    std::vector<int> edge_ids;
};
std::vector<SimplePath> simple_paths_substitution(const LabelledTransducer& t, const Symbol& a);

}  // namespace infgraph
