// Shared test fixtures: the three bundled presentations built in code,
// plus deterministic random-instance generators.
#pragma once

#include <random>

#include "infgraph/chrgrammar.hpp"
#include "infgraph/hrgrammar.hpp"
#include "infgraph/prefixrec.hpp"
#include "infgraph/rational.hpp"

namespace infgraph::fixtures {

// Transducer over X = {0,1,bot} whose graph has trace language
// { a^n b^n c^n } between the empty word and bot:
//   a : 0^n -> 0^(n+1)
//   b : 0^(i+1) 1^j -> 0^i 1^(j+1)
//   c : 1^(n+1) -> 1^n  and  1 -> bot
inline RationalGraphPresentation counting_graph() {
    LabelledTransducer t;
    t.X = SymbolAlphabet({"0", "1", "bot"});
    t.Sigma = SymbolAlphabet({"a", "b", "c"});
    t.n_states = 6;  // 0:start 1,2:carriers 3,4,5:labelled finals
    t.initial = {0};
    t.final = {3, 4, 5};
    t.labels = {{3, {"a"}}, {4, {"b"}}, {5, {"c"}}};
    t.edges = {
        {0, {}, {"0"}, 3},      {0, {"0"}, {"0"}, 1},  {0, {"0"}, {"1"}, 4},
        {0, {"1"}, {}, 2},      {0, {"1"}, {"bot"}, 5}, {1, {"0"}, {"0"}, 1},
        {1, {"0"}, {"1"}, 4},   {2, {"1"}, {"1"}, 2},  {2, {"1"}, {"1"}, 5},
        {3, {"0"}, {"0"}, 3},   {4, {"1"}, {"1"}, 4},
    };
    RationalGraphPresentation p;
    p.t = std::move(t);
    return p;
}

// Infinite ladder: vertices B^n and B^n A, arcs
//   B^n -b-> B^(n+1),  B^n -a-> B^n A,  B^(n+1) A -c-> B^n A.
inline PrefixRecPresentation ladder(bool longC = false) {
    PrefixRecPresentation p;
    p.directions = SymbolAlphabet({"A", "B"});
    p.Sigma = SymbolAlphabet({"a", "b", "c"});
    SymbolAlphabet barred = barred_alphabet(p.directions);
    p.phi["a"] = compile("A", barred);
    p.phi["b"] = compile("B", barred);
    p.phi["c"] = compile(longC ? "A~B~B~*A" : "A~B~A", barred);
    p.restriction = compile("A+B*+B*A", p.directions);
    return p;
}

// One rule A(x1,x2): terminal arcs x1 -a-> x2, x1 -b-> n1, n3 -c-> x2,
// non-terminals A(n1,n2), A(n2,n3). Level n has 3(2^n - 1) terminal
// arcs and 2^n non-terminals.
inline HRGrammar triangle() {
    HRGrammar g;
    g.nonterminals = {{"A", 2}};
    g.terminals = {{"a", 2}, {"b", 2}, {"c", 2}};
    g.axiom.vertices = {"v1", "v2"};
    g.axiom.add({"A", {"v1", "v2"}});
    HRRule r;
    r.formals = {"x1", "x2"};
    r.rhs.vertices = {"x1", "x2", "n1", "n2", "n3"};
    r.rhs.add_arc("x1", "a", "x2");
    r.rhs.add_arc("x1", "b", "n1");
    r.rhs.add_arc("n3", "c", "x2");
    r.rhs.add({"A", {"n1", "n2"}});
    r.rhs.add({"A", {"n2", "n3"}});
    g.rules["A"] = std::move(r);
    return g;
}

// ---- random instances ----

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Random transducer over X = {0,1}, Sigma = {a,b}; edge words of length
// <= maxWordLen (0 allowed = epsilon).
inline LabelledTransducer random_transducer(Rng& rng, int maxStates, int maxWordLen,
                                            bool allowEpsEps = true) {
    LabelledTransducer t;
    t.X = SymbolAlphabet({"0", "1"});
    t.Sigma = SymbolAlphabet({"a", "b"});
    t.n_states = 1 + pick(rng, maxStates);
    t.initial = {0};
    auto word = [&] {
        Word w;
        int len = pick(rng, maxWordLen + 1);
        for (int i = 0; i < len; ++i)
            w.push_back(pick(rng, 2) ? "1" : "0");
        return w;
    };
    int nEdges = 2 + pick(rng, 2 * t.n_states);
    for (int i = 0; i < nEdges; ++i) {
        TransducerEdge e{pick(rng, t.n_states), word(), word(), pick(rng, t.n_states)};
        if (!allowEpsEps && e.in.empty() && e.out.empty())
            e.in.push_back("0");
        t.edges.push_back(std::move(e));
    }
    for (int s = 0; s < t.n_states; ++s)
        if (pick(rng, 2)) {
            t.final.push_back(s);
            t.labels[s].insert(pick(rng, 2) ? "b" : "a");
        }
    if (t.final.empty()) {
        t.final.push_back(t.n_states - 1);
        t.labels[t.n_states - 1].insert("a");
    }
    return t;
}

// Random NFA over the given alphabet.
inline FiniteAutomaton random_nfa(Rng& rng, const SymbolAlphabet& alpha, int maxStates,
                                  bool allowEpsilon = true) {
    FiniteAutomaton a;
    a.alphabet = alpha;
    a.n_states = 1 + pick(rng, maxStates);
    a.initial = {0};
    int nTrans = 1 + pick(rng, 3 * a.n_states);
    for (int i = 0; i < nTrans; ++i) {
        Symbol l;
        int k = pick(rng, static_cast<int>(alpha.size()) + (allowEpsilon ? 1 : 0));
        if (k < static_cast<int>(alpha.size()))
            l = alpha.symbols()[k];
        a.transitions.push_back({pick(rng, a.n_states), l, pick(rng, a.n_states)});
    }
    for (int s = 0; s < a.n_states; ++s)
        if (pick(rng, 2)) a.final.push_back(s);
    if (a.final.empty()) a.final.push_back(a.n_states - 1);
    return a;
}

// Random prefix-recognizable presentation over directions {A,B},
// labels {a,b}, phi automata of <= maxPhiStates states.
inline PrefixRecPresentation random_prefrec(Rng& rng, int maxPhiStates) {
    PrefixRecPresentation p;
    p.directions = SymbolAlphabet({"A", "B"});
    p.Sigma = SymbolAlphabet({"a", "b"});
    SymbolAlphabet barred = barred_alphabet(p.directions);
    p.phi["a"] = random_nfa(rng, barred, maxPhiStates);
    p.phi["b"] = random_nfa(rng, barred, maxPhiStates);
    p.restriction = universal_automaton(p.directions);
    return p;
}

// Random explicit graph over labels {a,b} with n vertices named g<i>.
inline Graph random_graph(Rng& rng, int nVertices, int nArcs) {
    Graph g;
    for (int i = 0; i < nVertices; ++i)
        g.vertices.insert("g" + std::to_string(i));
    for (int i = 0; i < nArcs; ++i)
        g.add_arc("g" + std::to_string(pick(rng, nVertices)), pick(rng, 2) ? "b" : "a",
                  "g" + std::to_string(pick(rng, nVertices)));
    return g;
}

// Random small HR grammar: non-terminals of arity 2, every rule rhs
// mixes terminal arcs {a,b}, a source colour here and there, and a few
// non-terminals; always one rule per non-terminal.
inline HRGrammar random_hr(Rng& rng, int nNonTerminals) {
    HRGrammar g;
    g.terminals = {{"a", 2}, {"b", 2}, {"src", 1}};
    std::vector<Symbol> nts;
    for (int i = 0; i < nNonTerminals; ++i) {
        Symbol nt = "N" + std::to_string(i);
        nts.push_back(nt);
        g.nonterminals[nt] = 2;
    }
    g.axiom.vertices = {"v1", "v2"};
    g.axiom.add({nts[0], {"v1", "v2"}});
    if (pick(rng, 2)) g.axiom.add_colour("src", "v1");
    for (const Symbol& nt : nts) {
        HRRule r;
        r.formals = {"x1", "x2"};
        int nInner = 1 + pick(rng, 3);
        std::vector<Vertex> verts = {"x1", "x2"};
        for (int i = 0; i < nInner; ++i)
            verts.push_back("n" + std::to_string(i));
        r.rhs.vertices.insert(verts.begin(), verts.end());
        int nArcs = 1 + pick(rng, 4);
        for (int i = 0; i < nArcs; ++i)
            r.rhs.add_arc(verts[pick(rng, static_cast<int>(verts.size()))],
                          pick(rng, 2) ? "b" : "a",
                          verts[pick(rng, static_cast<int>(verts.size()))]);
        if (pick(rng, 4) == 0)
            r.rhs.add_colour("src", verts[pick(rng, static_cast<int>(verts.size()))]);
        int nNt = pick(rng, 3);
        for (int i = 0; i < nNt; ++i) {
            int va = pick(rng, static_cast<int>(verts.size()));
            int vb = pick(rng, static_cast<int>(verts.size()));
            if (va == vb) continue;
            r.rhs.add({nts[pick(rng, nNonTerminals)], {verts[va], verts[vb]}});
        }
        g.rules[nt] = std::move(r);
    }
    return g;
}

}  // namespace infgraph::fixtures
