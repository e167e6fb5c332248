#include "infgraph/transducer.hpp"

#include <algorithm>
#include <array>
#include <queue>

namespace infgraph {

void LabelledTransducer::validate() {
    auto ok = [&](int s) { return s >= 0 && s < n_states; };
    for (int s : initial)
        if (!ok(s)) throw ValidationError("transducer: initial state out of range");
    for (int s : final)
        if (!ok(s)) throw ValidationError("transducer: final state out of range");
    for (const auto& e : edges) {
        if (!ok(e.from) || !ok(e.to))
            throw ValidationError("transducer: edge endpoint out of range");
        X.require_word(e.in, "transducer edge input");
        X.require_word(e.out, "transducer edge output");
    }
    for (const auto& [s, ls] : labels) {
        if (!ok(s)) throw ValidationError("transducer: labelled state out of range");
        if (std::find(final.begin(), final.end(), s) == final.end())
            throw ValidationError("transducer: label map key " + std::to_string(s) +
                                  " is not a final state");
        if (ls.empty())
            throw ValidationError("transducer: empty label set on state " + std::to_string(s));
        for (const Symbol& a : ls)
            if (!Sigma.contains(a))
                throw ValidationError("transducer: arc label '" + a + "' not in Sigma");
    }
    // Final states without a label set cannot produce arcs; demote them.
    std::vector<int> kept;
    for (int s : final)
        if (labels.count(s)) kept.push_back(s);
    final = std::move(kept);
}

bool accepts_pair(const RationalRelation& r, const Word& u, const Word& v) {
    struct Cfg {
        int state;
        std::size_t i, j;
        auto operator<=>(const Cfg&) const = default;
    };
    std::set<Cfg> seen;
    std::vector<Cfg> stack;
    for (int s : r.initial) {
        Cfg c{s, 0, 0};
        if (seen.insert(c).second) stack.push_back(c);
    }
    auto matches = [](const Word& w, std::size_t pos, const Word& part) {
        if (pos + part.size() > w.size()) return false;
        return std::equal(part.begin(), part.end(), w.begin() + pos);
    };
    std::set<int> fin(r.final.begin(), r.final.end());
    while (!stack.empty()) {
        Cfg c = stack.back();
        stack.pop_back();
        if (c.i == u.size() && c.j == v.size() && fin.count(c.state))
            return true;
        for (const auto& e : r.edges) {
            if (e.from != c.state) continue;
            if (!matches(u, c.i, e.in) || !matches(v, c.j, e.out)) continue;
            Cfg n{e.to, c.i + e.in.size(), c.j + e.out.size()};
            if (seen.insert(n).second) stack.push_back(n);
        }
    }
    return false;
}

bool accepts_arc(const LabelledTransducer& t, const Word& u, const Symbol& a, const Word& v) {
    if (!t.Sigma.contains(a))
        throw ValidationError("accepts_arc: label '" + a + "' not in Sigma");
    return accepts_pair(relation_of(t, a), u, v);
}

RationalRelation relation_of(const LabelledTransducer& t, const Symbol& a) {
    if (!t.Sigma.contains(a))
        throw ValidationError("relation_of: label '" + a + "' not in Sigma");
    RationalRelation r = t;
    r.final.clear();
    for (int f : t.final) {
        auto it = t.labels.find(f);
        if (it != t.labels.end() && it->second.count(a))
            r.final.push_back(f);
    }
    r.labels.clear();
    return r;
}

LabelledTransducer normalize_edges(const LabelledTransducer& t) {
    LabelledTransducer n = t;
    n.edges.clear();
    for (const auto& e : t.edges) {
        std::size_t steps = std::max<std::size_t>({e.in.size(), e.out.size(), 1});
        int prev = e.from;
        for (std::size_t k = 0; k < steps; ++k) {
            int next = (k + 1 == steps) ? e.to : n.n_states++;
            Word in = k < e.in.size() ? Word{e.in[k]} : Word{};
            Word out = k < e.out.size() ? Word{e.out[k]} : Word{};
            n.edges.push_back({prev, std::move(in), std::move(out), next});
            prev = next;
        }
    }
    return n;
}

FiniteAutomaton image_of(const RationalRelation& r, const FiniteAutomaton& s) {
    if (!(r.X == s.alphabet))
        throw ValidationError("image_of: alphabet mismatch");
    RationalRelation n = normalize_edges(r);
    FiniteAutomaton out;
    out.alphabet = r.X;
    // States are (s-state, transducer-state) pairs, interned on demand.
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> worklist;
    std::set<int> sfin(s.final.begin(), s.final.end());
    std::set<int> tfin(n.final.begin(), n.final.end());
    auto intern = [&](int p, int q) {
        auto key = std::make_pair(p, q);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (static_cast<std::size_t>(out.n_states) + 1 > max_states())
            throw ValidationError("image_of: state cap exceeded");
        int m = out.n_states++;
        id.emplace(key, m);
        worklist.push_back(key);
        if (sfin.count(p) && tfin.count(q)) out.final.push_back(m);
        return m;
    };
    for (int p : s.initial)
        for (int q : n.initial)
            out.initial.push_back(intern(p, q));
    for (std::size_t w = 0; w < worklist.size(); ++w) {
        auto [p, q] = worklist[w];
        int from = id.at({p, q});
        // epsilon moves of the source automaton
        for (const auto& st : s.transitions)
            if (st.from == p && st.label.empty())
                out.transitions.push_back({from, "", intern(st.to, q)});
        for (const auto& e : n.edges) {
            if (e.from != q) continue;
            Symbol emit = e.out.empty() ? "" : e.out[0];
            if (e.in.empty()) {
                out.transitions.push_back({from, emit, intern(p, e.to)});
            } else {
                for (const auto& st : s.transitions)
                    if (st.from == p && st.label == e.in[0])
                        out.transitions.push_back({from, emit, intern(st.to, e.to)});
            }
        }
    }
    return trim(out);
}

RationalRelation compose(const RationalRelation& r1, const RationalRelation& r2) {
    if (!(r1.X == r2.X))
        throw ValidationError("compose: alphabet mismatch");
    RationalRelation a = normalize_edges(r1), b = normalize_edges(r2);
    RationalRelation r;
    r.X = r1.X;
    r.Sigma = r1.Sigma;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> worklist;
    std::set<int> af(a.final.begin(), a.final.end());
    std::set<int> bf(b.final.begin(), b.final.end());
    auto intern = [&](int p, int q) {
        auto key = std::make_pair(p, q);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (static_cast<std::size_t>(r.n_states) + 1 > max_states())
            throw ValidationError("compose: state cap exceeded");
        int m = r.n_states++;
        id.emplace(key, m);
        worklist.push_back(key);
        if (af.count(p) && bf.count(q)) r.final.push_back(m);
        return m;
    };
    for (int p : a.initial)
        for (int q : b.initial)
            r.initial.push_back(intern(p, q));
    for (std::size_t w = 0; w < worklist.size(); ++w) {
        auto [p, q] = worklist[w];
        int from = id.at({p, q});
        for (const auto& e : a.edges) {
            if (e.from != p) continue;
            if (e.out.empty()) {
                // r1 produces nothing on the middle tape
                r.edges.push_back({from, e.in, {}, intern(e.to, q)});
            } else {
                for (const auto& f : b.edges)
                    if (f.from == q && !f.in.empty() && f.in[0] == e.out[0])
                        r.edges.push_back({from, e.in, f.out, intern(e.to, f.to)});
            }
        }
        for (const auto& f : b.edges)
            if (f.from == q && f.in.empty())
                r.edges.push_back({from, {}, f.out, intern(p, f.to)});
    }
    return r;
}

RationalRelation converse(const RationalRelation& r) {
    RationalRelation c = r;
    for (auto& e : c.edges)
        std::swap(e.in, e.out);
    return c;
}

RationalRelation identity_relation(const SymbolAlphabet& X) {
    RationalRelation r;
    r.X = X;
    r.n_states = 1;
    r.initial = {0};
    r.final = {0};
    for (const Symbol& x : X.symbols())
        r.edges.push_back({0, {x}, {x}, 0});
    return r;
}

LabelledTransducer restrict_pair(const LabelledTransducer& t, const FiniteAutomaton& dom,
                                 const FiniteAutomaton& rng) {
    if (!(t.X == dom.alphabet) || !(t.X == rng.alphabet))
        throw ValidationError("restrict_pair: alphabet mismatch");
    LabelledTransducer n = normalize_edges(t);
    FiniteAutomaton dd = determinize(dom), dr = determinize(rng);
    LabelledTransducer r;
    r.X = t.X;
    r.Sigma = t.Sigma;
    std::map<std::array<int, 3>, int> id;
    std::vector<std::array<int, 3>> worklist;
    std::set<int> tf(n.final.begin(), n.final.end());
    std::set<int> df(dd.final.begin(), dd.final.end());
    std::set<int> rf(dr.final.begin(), dr.final.end());
    auto intern = [&](int q, int d, int g) {
        std::array<int, 3> key{q, d, g};
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (static_cast<std::size_t>(r.n_states) + 1 > max_states())
            throw ValidationError("restrict_pair: state cap exceeded");
        int m = r.n_states++;
        id.emplace(key, m);
        worklist.push_back(key);
        if (tf.count(q) && df.count(d) && rf.count(g)) {
            r.final.push_back(m);
            auto lit = n.labels.find(q);
            if (lit != n.labels.end()) r.labels[m] = lit->second;
        }
        return m;
    };
    auto dfa_step = [](const FiniteAutomaton& d, int s, const Symbol& sym) {
        for (const auto& tr : d.transitions)
            if (tr.from == s && tr.label == sym) return tr.to;
        return -1;
    };
    if (dd.initial.empty() || dr.initial.empty())
        return r;
    for (int q : n.initial)
        r.initial.push_back(intern(q, dd.initial[0], dr.initial[0]));
    for (std::size_t w = 0; w < worklist.size(); ++w) {
        auto [q, d, g] = worklist[w];
        int from = id.at({q, d, g});
        for (const auto& e : n.edges) {
            if (e.from != q) continue;
            int d2 = e.in.empty() ? d : dfa_step(dd, d, e.in[0]);
            int g2 = e.out.empty() ? g : dfa_step(dr, g, e.out[0]);
            if (d2 < 0 || g2 < 0) continue;
            r.edges.push_back({from, e.in, e.out, intern(e.to, d2, g2)});
        }
    }
    return r;
}

std::vector<std::pair<Word, Word>> enumerate_pairs(const RationalRelation& r,
                                                   std::size_t max_in, std::size_t max_out) {
    std::set<std::pair<Word, Word>> found;
    struct Cfg {
        int state;
        Word u, v;
        auto operator<=>(const Cfg&) const = default;
    };
    std::set<Cfg> seen;
    std::vector<Cfg> stack;
    for (int s : r.initial) {
        Cfg c{s, {}, {}};
        if (seen.insert(c).second) stack.push_back(c);
    }
    std::set<int> fin(r.final.begin(), r.final.end());
    while (!stack.empty()) {
        Cfg c = stack.back();
        stack.pop_back();
        if (fin.count(c.state))
            found.emplace(c.u, c.v);
        for (const auto& e : r.edges) {
            if (e.from != c.state) continue;
            if (c.u.size() + e.in.size() > max_in || c.v.size() + e.out.size() > max_out)
                continue;
            Cfg n{e.to, c.u, c.v};
            n.u.insert(n.u.end(), e.in.begin(), e.in.end());
            n.v.insert(n.v.end(), e.out.begin(), e.out.end());
            if (seen.insert(n).second) stack.push_back(std::move(n));
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace infgraph
