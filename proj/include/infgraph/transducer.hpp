// transducer.hpp -- labelled rational transducers and rational relations.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "infgraph/alphabet.hpp"
#include "infgraph/automaton.hpp"

namespace infgraph {

struct TransducerEdge {
    int from;
    Word in;
    Word out;
    int to;
    auto operator<=>(const TransducerEdge&) const = default;
};

// Finite-state device over word pairs. Final states carry the set of
// arc labels they produce; a final state with no labels is demoted to
// non-final by validate().
struct LabelledTransducer {
    SymbolAlphabet X;      // vertex alphabet
    SymbolAlphabet Sigma;  // arc-label alphabet
    int n_states = 0;
    std::vector<int> initial;
    std::vector<int> final;
    std::map<int, std::set<Symbol>> labels;
    std::vector<TransducerEdge> edges;

    void validate();
};

// A transducer projected to a single label; the label map is ignored.
using RationalRelation = LabelledTransducer;

bool accepts_arc(const LabelledTransducer& t, const Word& u, const Symbol& a, const Word& v);

// Pair acceptance ignoring labels (every final state accepts).
bool accepts_pair(const RationalRelation& r, const Word& u, const Word& v);

// Keeps only final states f with a in L(f).
RationalRelation relation_of(const LabelledTransducer& t, const Symbol& a);

// { v | exists u in L(s), (u,v) in r }.
FiniteAutomaton image_of(const RationalRelation& r, const FiniteAutomaton& s);

// (u,w) iff exists v with (u,v) in r1 and (v,w) in r2.
RationalRelation compose(const RationalRelation& r1, const RationalRelation& r2);

// (u,v) iff (v,u) in r.
RationalRelation converse(const RationalRelation& r);

// Splits edges so every edge carries words of length <= 1 on both tapes.
LabelledTransducer normalize_edges(const LabelledTransducer& t);

// The identity relation {(u,u) | u in X*}.
RationalRelation identity_relation(const SymbolAlphabet& X);

// Restricts the pair language to L(dom) x L(rng) componentwise:
// accepts (u,v) iff t accepts (u,v), u in L(dom) and v in L(rng).
LabelledTransducer restrict_pair(const LabelledTransducer& t, const FiniteAutomaton& dom,
                                 const FiniteAutomaton& rng);

// All accepted pairs with |u| <= max_in and |v| <= max_out,
// deterministically ordered. Test and oracle helper.
std::vector<std::pair<Word, Word>> enumerate_pairs(const RationalRelation& r,
                                                   std::size_t max_in, std::size_t max_out);

}  // namespace infgraph
