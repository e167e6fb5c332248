#include "infgraph/prefixrec.hpp"

#include <algorithm>

namespace infgraph {

void PrefixRecPresentation::validate() const {
    for (const Symbol& a : Sigma.symbols())
        if (!phi.count(a))
            throw ValidationError("prefrec: phi is not total, missing label '" + a + "'");
    for (const auto& [a, nfa] : phi) {
        if (!Sigma.contains(a))
            throw ValidationError("prefrec: phi key '" + a + "' not in Sigma");
        for (const auto& t : nfa.transitions)
            if (!t.label.empty() && !directions.contains(strip_bar(t.label)))
                throw ValidationError("prefrec: phi('" + a + "') uses unknown direction '" +
                                      t.label + "'");
    }
    for (const auto& t : restriction.transitions)
        if (!t.label.empty() && is_barred(t.label))
            throw ValidationError("prefrec: restriction may not use barred symbols");
}

WalkSummaries saturate(const FiniteAutomaton& phiAut, const SymbolAlphabet& directions) {
    const int n = phiAut.n_states;
    const int nd = static_cast<int>(directions.size());
    WalkSummaries w;
    w.n_states = n;
    w.pop.assign(n, std::vector<std::vector<char>>(nd, std::vector<char>(n, 0)));
    w.level.assign(n, std::vector<char>(n, 0));
    for (int q = 0; q < n; ++q)
        w.level[q][q] = 1;

    // Mutual fixpoint of pop and the net-zero closure `level`:
    //   level := closure of epsilon edges and (push d ; pop d)
    //   pop(q,d,q') := level(q,qm) and edge(qm, d-bar, q')
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : phiAut.transitions) {
            if (t.label.empty()) {
                for (int q = 0; q < n; ++q)
                    if (w.level[q][t.from] && !w.level[q][t.to]) {
                        w.level[q][t.to] = 1;
                        changed = true;
                    }
            } else if (!is_barred(t.label)) {
                int d = directions.index_of(t.label);
                // push then a matching pop is a net-zero step
                for (int q = 0; q < n; ++q) {
                    if (!w.level[q][t.from]) continue;
                    for (int q2 = 0; q2 < n; ++q2)
                        if (w.pop[t.to][d][q2] && !w.level[q][q2]) {
                            w.level[q][q2] = 1;
                            changed = true;
                        }
                }
            } else {
                int d = directions.index_of(strip_bar(t.label));
                for (int q = 0; q < n; ++q)
                    if (w.level[q][t.from] && !w.pop[q][d][t.to]) {
                        w.pop[q][d][t.to] = 1;
                        changed = true;
                    }
            }
        }
        // transitivity of level
        for (int q = 0; q < n; ++q)
            for (int m = 0; m < n; ++m) {
                if (!w.level[q][m]) continue;
                for (int r = 0; r < n; ++r)
                    if (w.level[m][r] && !w.level[q][r]) {
                        w.level[q][r] = 1;
                        changed = true;
                    }
            }
    }
    return w;
}

FiniteAutomaton PostStarResult::reach(const int phiState) const {
    FiniteAutomaton a = base;
    for (int s = 0; s < a.n_states; ++s)
        if (state_of[s] == phiState)
            a.final.push_back(s);
    return a;
}

PostStarResult post_star(const PrefixRecPresentation& p, const Symbol& a, const Word& start) {
    auto it = p.phi.find(a);
    if (it == p.phi.end())
        throw ValidationError("post_star: label '" + a + "' has no substitution image");
    const FiniteAutomaton& nfa = it->second;
    p.directions.require_word(start, "post_star start");
    WalkSummaries w = saturate(nfa, p.directions);

    const int n = nfa.n_states;
    const std::size_t len = start.size();

    // descended[i][q]: a walk can stand at prefix start[0..i] in state q.
    std::vector<std::vector<char>> at(len + 1, std::vector<char>(n, 0));
    for (int q0 : nfa.initial)
        for (int q = 0; q < n; ++q)
            if (w.level[q0][q]) at[len][q] = 1;
    for (std::size_t i = len; i > 0; --i) {
        int d = p.directions.index_of(start[i - 1]);
        for (int q = 0; q < n; ++q) {
            if (!at[i][q]) continue;
            for (int q2 = 0; q2 < n; ++q2) {
                if (!w.pop[q][d][q2]) continue;
                for (int q3 = 0; q3 < n; ++q3)
                    if (w.level[q2][q3]) at[i - 1][q3] = 1;
            }
        }
    }

    // Assemble one NFA: a spine spelling the prefixes of `start`, with
    // epsilon edges into the phi-state part; inside it, transitions are
    // pushes reachable after a net-zero excursion.
    PostStarResult res;
    FiniteAutomaton& b = res.base;
    b.alphabet = p.directions;
    b.n_states = static_cast<int>(len) + 1 + n;
    res.state_of.assign(b.n_states, -1);
    for (int q = 0; q < n; ++q)
        res.state_of[static_cast<int>(len) + 1 + q] = q;
    auto phiState = [&](int q) { return static_cast<int>(len) + 1 + q; };
    b.initial = {0};
    for (std::size_t i = 0; i < len; ++i)
        b.transitions.push_back({static_cast<int>(i), start[i], static_cast<int>(i) + 1});
    for (std::size_t i = 0; i <= len; ++i)
        for (int q = 0; q < n; ++q)
            if (at[i][q])
                b.transitions.push_back({static_cast<int>(i), "", phiState(q)});
    for (const auto& t : nfa.transitions) {
        if (t.label.empty() || is_barred(t.label)) continue;
        for (int q = 0; q < n; ++q)
            if (w.level[q][t.from])
                b.transitions.push_back({phiState(q), t.label, phiState(t.to)});
    }
    // net-zero moves inside the phi part
    for (int q = 0; q < n; ++q)
        for (int q2 = 0; q2 < n; ++q2)
            if (q != q2 && w.level[q][q2])
                b.transitions.push_back({phiState(q), "", phiState(q2)});
    return res;
}

bool arc_exists(const PrefixRecPresentation& p, const Word& u, const Symbol& a, const Word& v) {
    for (const Symbol& s : u)
        if (is_barred(s)) throw ValidationError("arc_exists: barred letter in vertex word");
    for (const Symbol& s : v)
        if (is_barred(s)) throw ValidationError("arc_exists: barred letter in vertex word");
    if (!p.vertex_allowed(u) || !p.vertex_allowed(v))
        return false;
    PostStarResult ps = post_star(p, a, u);
    const FiniteAutomaton& nfa = p.phi.at(a);
    for (int f : nfa.final)
        if (accepts(ps.reach(f), v))
            return true;
    return false;
}

PrefWordList pr_successors(const PrefixRecPresentation& p, const Word& u, const Symbol& a,
                           std::size_t max_len, std::size_t cap) {
    PrefWordList out;
    if (!p.vertex_allowed(u))
        return out;
    PostStarResult ps = post_star(p, a, u);
    FiniteAutomaton all = ps.base;
    const FiniteAutomaton& nfa = p.phi.at(a);
    for (int f : nfa.final)
        for (int s = 0; s < all.n_states; ++s)
            if (ps.state_of[s] == f)
                all.final.push_back(s);
    std::set<Word> uniq;
    for (Word& v : enumerate(all, max_len))
        if (p.vertex_allowed(v))
            uniq.insert(std::move(v));
    for (const Word& v : uniq) {
        if (out.words.size() >= cap) {
            out.truncated = true;
            break;
        }
        out.words.push_back(v);
    }
    std::sort(out.words.begin(), out.words.end(), [&](const Word& x, const Word& y) {
        return word_lenlex_less(p.directions, x, y);
    });
    return out;
}

Graph bounded_view(const PrefixRecPresentation& p, std::size_t max_vertex_len, bool parallel) {
    std::vector<Word> verts = enumerate(p.restriction, max_vertex_len);
    std::set<Word> vset(verts.begin(), verts.end());
    const int n = static_cast<int>(verts.size());
    std::vector<Graph> partial(std::max(n, 1));

    auto body = [&](int i) {
        const Word& u = verts[i];
        Graph& g = partial[i];
        g.vertices.insert(word_to_string(u));
        for (const Symbol& a : p.Sigma.symbols()) {
            PrefWordList succ = pr_successors(p, u, a, max_vertex_len);
            for (const Word& v : succ.words)
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

bool arc_exists_bfs(const PrefixRecPresentation& p, const Word& u, const Symbol& a,
                    const Word& v, std::size_t max_cfg_len) {
    if (!p.vertex_allowed(u) || !p.vertex_allowed(v))
        return false;
    const FiniteAutomaton& nfa = p.phi.at(a);
    std::set<int> fin(nfa.final.begin(), nfa.final.end());
    std::set<std::pair<int, Word>> seen;
    std::vector<std::pair<int, Word>> stack;
    for (int q : nfa.initial) {
        auto c = std::make_pair(q, u);
        if (seen.insert(c).second) stack.push_back(c);
    }
    while (!stack.empty()) {
        auto [q, z] = stack.back();
        stack.pop_back();
        if (fin.count(q) && z == v)
            return true;
        for (const auto& t : nfa.transitions) {
            if (t.from != q) continue;
            if (t.label.empty()) {
                auto c = std::make_pair(t.to, z);
                if (seen.insert(c).second) stack.push_back(c);
            } else if (is_barred(t.label)) {
                Symbol d = strip_bar(t.label);
                if (!z.empty() && z.back() == d) {
                    Word z2(z.begin(), z.end() - 1);
                    auto c = std::make_pair(t.to, std::move(z2));
                    if (seen.insert(c).second) stack.push_back(c);
                }
            } else {
                if (z.size() + 1 > max_cfg_len) continue;
                Word z2 = z;
                z2.push_back(t.label);
                auto c = std::make_pair(t.to, std::move(z2));
                if (seen.insert(c).second) stack.push_back(c);
            }
        }
    }
    return false;
}

}  // namespace infgraph
