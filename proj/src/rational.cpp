#include "infgraph/rational.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace infgraph {

bool RationalGraphPresentation::vertex_allowed(const Word& u) const {
    return !vertexRestriction || accepts(*vertexRestriction, u);
}

bool arc_exists(const RationalGraphPresentation& p, const Word& u, const Symbol& a,
                const Word& v) {
    p.X().require_word(u, "arc_exists source");
    p.X().require_word(v, "arc_exists target");
    if (!p.vertex_allowed(u) || !p.vertex_allowed(v))
        return false;
    return accepts_arc(p.t, u, a, v);
}

WordList successors(const RationalGraphPresentation& p, const Word& u, const Symbol& a,
                    std::size_t max_len, std::size_t cap) {
    p.X().require_word(u, "successors source");
    WordList out;
    if (!p.vertex_allowed(u))
        return out;
    FiniteAutomaton img = image_of(relation_of(p.t, a), singleton_automaton(p.X(), u));
    for (Word& v : enumerate(img, max_len)) {
        if (!p.vertex_allowed(v)) continue;
        if (out.words.size() >= cap) {
            out.truncated = true;
            break;
        }
        out.words.push_back(std::move(v));
    }
    return out;
}

WordList predecessors(const RationalGraphPresentation& p, const Word& v, const Symbol& a,
                      std::size_t max_len, std::size_t cap) {
    RationalGraphPresentation q;
    q.t = converse(relation_of(p.t, a));
    q.t.Sigma = p.t.Sigma;
    for (int f : q.t.final)
        q.t.labels[f] = {a};
    q.vertexRestriction = p.vertexRestriction;
    return successors(q, v, a, max_len, cap);
}

static std::vector<Word> view_vertices(const RationalGraphPresentation& p,
                                       std::size_t max_vertex_len) {
    FiniteAutomaton all = p.vertexRestriction ? *p.vertexRestriction
                                              : universal_automaton(p.X());
    return enumerate(all, max_vertex_len);
}

Graph bounded_view(const RationalGraphPresentation& p, std::size_t max_vertex_len,
                   bool parallel) {
    std::vector<Word> verts = view_vertices(p, max_vertex_len);
    std::set<Word> vset(verts.begin(), verts.end());

    // Per-label relations are shared read-only across the loop.
    std::vector<std::pair<Symbol, RationalRelation>> rels;
    for (const Symbol& a : p.Sigma().symbols())
        rels.emplace_back(a, relation_of(p.t, a));

    const int n = static_cast<int>(verts.size());
    std::vector<Graph> partial(std::max(n, 1));

    auto body = [&](int i) {
        const Word& u = verts[i];
        Graph& g = partial[i];
        g.vertices.insert(word_to_string(u));
        for (const auto& [a, rel] : rels) {
            FiniteAutomaton img = image_of(rel, singleton_automaton(p.X(), u));
            for (const Word& v : enumerate(img, max_vertex_len))
                if (vset.count(v))
                    g.add_arc(word_to_string(u), a, word_to_string(v));
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i)
            body(i);
    } else {
        for (int i = 0; i < n; ++i)
            body(i);
    }

    Graph out;
    for (const Graph& g : partial) {
        out.vertices.insert(g.vertices.begin(), g.vertices.end());
        out.arcs.insert(g.arcs.begin(), g.arcs.end());
    }
    return out;
}

static FiniteAutomaton restricted(const RationalGraphPresentation& p,
                                  const FiniteAutomaton& a) {
    if (!p.vertexRestriction)
        return a;
    return intersect(a, *p.vertexRestriction);
}

bool trace_member(const RationalGraphPresentation& p, const TraceQuery& q) {
    for (const Symbol& a : q.word)
        if (!p.Sigma().contains(a))
            throw ValidationError("trace_member: symbol '" + a + "' not in Sigma");
    // Front iteration: S_0 = I ∩ restriction, S_i = image(S_{i-1})
    // under the a_i relation, kept determinized and trimmed.
    FiniteAutomaton front = trim(determinize(restricted(p, q.I)));
    for (const Symbol& a : q.word) {
        if (is_empty(front))
            return false;
        front = image_of(relation_of(p.t, a), front);
        front = trim(determinize(restricted(p, front)));
    }
    return !is_empty(intersect(front, q.F));
}

static void sample_rec(const RationalGraphPresentation& p, const FiniteAutomaton& front,
                       const FiniteAutomaton& F, std::vector<Symbol>& prefix,
                       std::size_t max_len, std::vector<std::vector<Symbol>>& out) {
    if (is_empty(front))
        return;
    if (!is_empty(intersect(front, F)))
        out.push_back(prefix);
    if (prefix.size() == max_len)
        return;
    for (const Symbol& a : p.Sigma().symbols()) {
        FiniteAutomaton next = trim(determinize(restricted(p, image_of(relation_of(p.t, a), front))));
        prefix.push_back(a);
        sample_rec(p, next, F, prefix, max_len, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<Symbol>> trace_language_sample(const RationalGraphPresentation& p,
                                                       const FiniteAutomaton& I,
                                                       const FiniteAutomaton& F,
                                                       std::size_t max_len) {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> prefix;
    FiniteAutomaton front = trim(determinize(restricted(p, I)));
    sample_rec(p, front, F, prefix, max_len, out);
    std::stable_sort(out.begin(), out.end(),
                     [&](const std::vector<Symbol>& x, const std::vector<Symbol>& y) {
                         return word_lenlex_less(p.Sigma(), x, y);
                     });
    return out;
}

// Disjoint union keeping each part's final labels.
static LabelledTransducer union_transducers(const LabelledTransducer& a,
                                            const LabelledTransducer& b) {
    LabelledTransducer r = a;
    int off = a.n_states;
    r.n_states += b.n_states;
    for (int s : b.initial) r.initial.push_back(s + off);
    for (int s : b.final) r.final.push_back(s + off);
    for (const auto& [s, ls] : b.labels) r.labels[s + off] = ls;
    for (const auto& e : b.edges)
        r.edges.push_back({e.from + off, e.in, e.out, e.to + off});
    return r;
}

static LabelledTransducer labelled(RationalRelation rel, const SymbolAlphabet& Sigma,
                                   const Symbol& a) {
    rel.Sigma = Sigma;
    rel.labels.clear();
    for (int f : rel.final)
        rel.labels[f] = {a};
    return rel;
}

RationalGraphPresentation compose_graphs(const RationalGraphPresentation& p1,
                                         const RationalGraphPresentation& p2) {
    if (!(p1.X() == p2.X()))
        throw ValidationError("compose_graphs: vertex alphabet mismatch");
    std::vector<Symbol> pairSyms;
    for (const Symbol& a : p1.Sigma().symbols())
        for (const Symbol& b : p2.Sigma().symbols())
            pairSyms.push_back(a + "." + b);
    SymbolAlphabet pairSigma(pairSyms);

    LabelledTransducer t;
    bool first = true;
    for (const Symbol& a : p1.Sigma().symbols())
        for (const Symbol& b : p2.Sigma().symbols()) {
            LabelledTransducer part =
                labelled(compose(relation_of(p1.t, a), relation_of(p2.t, b)), pairSigma,
                         a + "." + b);
            part.X = p1.X();
            t = first ? part : union_transducers(t, part);
            first = false;
        }
    t.X = p1.X();
    t.Sigma = pairSigma;

    RationalGraphPresentation r;
    r.t = std::move(t);
    if (p1.vertexRestriction && p2.vertexRestriction)
        r.vertexRestriction = intersect(*p1.vertexRestriction, *p2.vertexRestriction);
    else if (p1.vertexRestriction)
        r.vertexRestriction = p1.vertexRestriction;
    else if (p2.vertexRestriction)
        r.vertexRestriction = p2.vertexRestriction;
    return r;
}

RationalGraphPresentation inverse_finite_substitution(
    const RationalGraphPresentation& p, const std::map<Symbol, std::vector<Word>>& phi) {
    std::vector<Symbol> newSyms;
    for (const auto& [d, words] : phi)
        newSyms.push_back(d);
    SymbolAlphabet Delta(newSyms);

    LabelledTransducer t;
    bool first = true;
    for (const auto& [d, words] : phi) {
        for (const Word& w : words) {
            RationalRelation rel = identity_relation(p.X());
            for (const Symbol& c : w) {
                Symbol base = strip_bar(c);
                if (!p.Sigma().contains(base))
                    throw ValidationError("inverse_finite_substitution: label '" + base +
                                          "' not in Sigma");
                RationalRelation step = relation_of(p.t, base);
                if (is_barred(c))
                    step = converse(step);
                rel = compose(rel, step);
            }
            LabelledTransducer part = labelled(std::move(rel), Delta, d);
            part.X = p.X();
            t = first ? part : union_transducers(t, part);
            first = false;
        }
    }
    if (first) {
        // All images empty: a transducer accepting nothing.
        t.X = p.X();
        t.n_states = 1;
        t.initial = {0};
    }
    t.X = p.X();
    t.Sigma = Delta;

    RationalGraphPresentation r;
    r.t = std::move(t);
    r.vertexRestriction = p.vertexRestriction;
    return r;
}

static void simple_paths_rec(const LabelledTransducer& t, const Symbol& a, int state,
                             std::vector<char>& used, std::vector<int>& path,
                             std::vector<SimplePath>& out) {
    auto lit = t.labels.find(state);
    bool isFinal = std::find(t.final.begin(), t.final.end(), state) != t.final.end();
    if (isFinal && lit != t.labels.end() && lit->second.count(a))
        out.push_back({path});
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        if (used[i] || t.edges[i].from != state) continue;
        used[i] = 1;
        path.push_back(static_cast<int>(i));
        simple_paths_rec(t, a, t.edges[i].to, used, path, out);
        path.pop_back();
        used[i] = 0;
    }
}

std::vector<SimplePath> simple_paths_substitution(const LabelledTransducer& t, const Symbol& a) {
    if (!t.Sigma.contains(a))
        throw ValidationError("simple_paths_substitution: label '" + a + "' not in Sigma");
    std::vector<SimplePath> out;
    std::vector<char> used(t.edges.size(), 0);
    std::vector<int> path;
    for (int s : t.initial)
        simple_paths_rec(t, a, s, used, path, out);
    std::sort(out.begin(), out.end(), [](const SimplePath& x, const SimplePath& y) {
        if (x.edge_ids.size() != y.edge_ids.size())
            return x.edge_ids.size() < y.edge_ids.size();
        return x.edge_ids < y.edge_ids;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SimplePath& x, const SimplePath& y) {
                              return x.edge_ids == y.edge_ids;
                          }),
              out.end());
    return out;
}

}  // namespace infgraph
