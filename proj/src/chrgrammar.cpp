#include "infgraph/chrgrammar.hpp"

#include <algorithm>
#include <functional>

namespace infgraph {

void CHRGrammar::validate() const {
    for (const auto& [s, ar] : nonterminals) {
        if (contextual.count(s) || terminals.count(s))
            throw ValidationError("chr: symbol '" + s + "' declared in several alphabets");
        if (ar < 1)
            throw ValidationError("chr: non-terminal '" + s + "' has arity " +
                                  std::to_string(ar));
    }
    for (const auto& [s, ar] : contextual)
        if (terminals.count(s))
            throw ValidationError("chr: symbol '" + s + "' declared in several alphabets");
    auto arity_of = [&](const Symbol& s) -> int {
        if (auto it = contextual.find(s); it != contextual.end()) return it->second;
        if (auto it = terminals.find(s); it != terminals.end()) return it->second;
        if (auto it = nonterminals.find(s); it != nonterminals.end()) return it->second;
        return -1;
    };
    auto check = [&](const Hypergraph& h, const std::string& where, bool allowNT) {
        for (const auto& arc : h.arcs) {
            int ar = arity_of(arc.label);
            if (ar < 0)
                throw ValidationError("chr: " + where + ": undeclared label '" + arc.label + "'");
            if (static_cast<int>(arc.verts.size()) != ar)
                throw ValidationError("chr: " + where + ": arity mismatch on '" + arc.label +
                                      "'");
            if (!allowNT && nonterminals.count(arc.label))
                throw ValidationError("chr: " + where + ": non-terminal '" + arc.label +
                                      "' not allowed here");
        }
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const ContextualRule& r = rules[i];
        std::string where = "rule " + std::to_string(i);
        if (!nonterminals.count(r.formal.label))
            throw ValidationError("chr: " + where + ": formal label '" + r.formal.label +
                                  "' is not a non-terminal");
        std::set<Vertex> distinct(r.formal.verts.begin(), r.formal.verts.end());
        if (distinct.size() != r.formal.verts.size())
            throw ValidationError("chr: " + where + ": formal vertices not pairwise distinct");
        check(r.context, where + " context", false);
        check(r.rhs, where + " rhs", true);
        // H_c ∪ f must be connected
        std::set<Vertex> comp(r.formal.verts.begin(), r.formal.verts.end());
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& arc : r.context.arcs) {
                bool touches = std::any_of(arc.verts.begin(), arc.verts.end(),
                                           [&](const Vertex& v) { return comp.count(v) > 0; });
                if (!touches) continue;
                for (const Vertex& v : arc.verts)
                    if (comp.insert(v).second) grew = true;
            }
        }
        for (const Vertex& v : r.context.vertices)
            if (!comp.count(v))
                throw ValidationError("chr: " + where +
                                      ": context plus formal hyperarc is not connected");
    }
    if (const auto* hg = std::get_if<Hypergraph>(&axiom))
        check(*hg, "axiom", true);
}

// ---- matching ----

std::vector<std::map<Vertex, Vertex>> find_matches(const Hypergraph& g,
                                                   const ContextualRule& r,
                                                   const Hyperarc& occurrence,
                                                   const std::set<Vertex>* frontier,
                                                   bool* touched_frontier) {
    std::map<Vertex, Vertex> base;
    for (std::size_t i = 0; i < r.formal.verts.size(); ++i)
        base[r.formal.verts[i]] = occurrence.verts[i];

    // Order context arcs so each has a previously-anchored vertex.
    std::vector<Hyperarc> ordered;
    {
        std::set<Vertex> anchored(r.formal.verts.begin(), r.formal.verts.end());
        std::vector<Hyperarc> remaining(r.context.arcs.begin(), r.context.arcs.end());
        while (!remaining.empty()) {
            bool progressed = false;
            for (auto it = remaining.begin(); it != remaining.end();) {
                bool touches = std::any_of(it->verts.begin(), it->verts.end(),
                                           [&](const Vertex& v) { return anchored.count(v); });
                if (touches) {
                    for (const Vertex& v : it->verts) anchored.insert(v);
                    ordered.push_back(*it);
                    it = remaining.erase(it);
                    progressed = true;
                } else {
                    ++it;
                }
            }
            if (!progressed)
                throw ValidationError("find_matches: context not connected to the formal hyperarc");
        }
    }

    std::vector<std::map<Vertex, Vertex>> results;
    std::vector<Hyperarc> garcs(g.arcs.begin(), g.arcs.end());

    std::function<void(std::size_t, std::map<Vertex, Vertex>&)> rec =
        [&](std::size_t k, std::map<Vertex, Vertex>& m) {
            if (k == ordered.size()) {
                results.push_back(m);
                return;
            }
            const Hyperarc& pat = ordered[k];
            bool any = false;
            for (const auto& host : garcs) {
                if (host.label != pat.label || host.verts.size() != pat.verts.size())
                    continue;
                // consistency with current assignment
                std::vector<std::pair<Vertex, Vertex>> added;
                bool ok = true;
                for (std::size_t i = 0; i < pat.verts.size() && ok; ++i) {
                    auto it = m.find(pat.verts[i]);
                    if (it != m.end()) {
                        if (it->second != host.verts[i]) ok = false;
                    } else {
                        m.emplace(pat.verts[i], host.verts[i]);
                        added.emplace_back(pat.verts[i], host.verts[i]);
                    }
                }
                if (ok) {
                    any = true;
                    rec(k + 1, m);
                }
                for (auto& [pv, hv] : added)
                    m.erase(pv);
            }
            if (!any && frontier && touched_frontier) {
                // the probe failed; if an anchored endpoint sits on the
                // materialization frontier, deeper axiom might unblock it
                for (const Vertex& v : pat.verts) {
                    auto it = m.find(v);
                    if (it != m.end() && frontier->count(it->second))
                        *touched_frontier = true;
                }
            }
        };
    rec(0, base);

    // distinct morphisms only
    std::sort(results.begin(), results.end());
    results.erase(std::unique(results.begin(), results.end()), results.end());
    return results;
}

// ---- generation ----

static Hypergraph complete_tree(const SymbolAlphabet& directions, int depth,
                                std::set<Vertex>& frontier) {
    Hypergraph h;
    std::vector<Word> layer = {Word{}};
    h.vertices.insert("");
    for (int d = 0; d < depth; ++d) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (const Symbol& s : directions.symbols()) {
                Word c = w;
                c.push_back(s);
                h.add_arc(word_to_string(w), s, word_to_string(c));
                next.push_back(std::move(c));
            }
        layer = std::move(next);
    }
    for (const Word& w : layer)
        frontier.insert(word_to_string(w));
    return h;
}

CHRState chr_initial(const CHRGrammar& g, int axiom_depth) {
    CHRState s;
    if (const auto* hg = std::get_if<Hypergraph>(&g.axiom)) {
        s.current = *hg;
    } else if (const auto* ta = std::get_if<TreeAxiom>(&g.axiom)) {
        s.current = complete_tree(ta->directions, axiom_depth, s.frontier);
        Hyperarc root{ta->rootNonTerminal, std::vector<Vertex>(ta->arity, "")};
        s.current.add(root);
    } else {
        const HRAxiom& ha = std::get<HRAxiom>(g.axiom);
        GenerationState gs = initial_state(ha.grammar);
        for (int i = 0; i < axiom_depth; ++i)
            gs = parallel_step(ha.grammar, gs);
        for (const auto& arc : gs.current.arcs) {
            if (ha.grammar.is_nonterminal(arc.label)) {
                for (const Vertex& v : arc.verts)
                    s.frontier.insert(v);
            } else {
                s.current.add(arc);
            }
        }
        s.current.vertices.insert(gs.current.vertices.begin(), gs.current.vertices.end());
        s.current.add(ha.placement);
    }
    return s;
}

CHRState chr_parallel_step(const CHRGrammar& g, const CHRState& s) {
    // Matches are computed against the pre-step graph; applications
    // only remove the matched non-terminal hyperarcs and add fresh or
    // context material, so they cannot invalidate each other.
    struct Planned {
        Hyperarc occ;
        const ContextualRule* rule;
        std::map<Vertex, Vertex> morphism;
    };
    std::vector<Planned> plan;
    CHRState out = s;
    out.level = s.level + 1;

    std::vector<Hyperarc> occs;
    for (const auto& arc : s.current.arcs)
        if (g.is_nonterminal(arc.label))
            occs.push_back(arc);

    for (const auto& occ : occs) {
        bool planned = false;
        for (const ContextualRule& r : g.rules) {
            if (r.formal.label != occ.label) continue;
            bool touched = false;
            auto ms = find_matches(s.current, r, occ, &s.frontier, &touched);
            if (touched) out.frontierTruncated = true;
            if (ms.size() > 1)
                throw ValidationError(
                    "chr: non-deterministic context match for '" + occ.label +
                    "' (axiom is not deterministic enough)");
            if (!ms.empty()) {
                plan.push_back({occ, &r, ms[0]});
                planned = true;
                break;
            }
        }
        (void)planned;  // unplanned occurrences stay blocked in place
    }

    for (const auto& pl : plan) {
        out.current.arcs.erase(pl.occ);
        std::map<Vertex, Vertex> m = pl.morphism;
        const Vertex& anchor = pl.occ.verts.empty() ? Vertex("r") : pl.occ.verts[0];
        for (const Vertex& v : pl.rule->rhs.vertices) {
            if (m.count(v)) continue;
            m[v] = anchor + "/" + v + "#" + std::to_string(out.freshCounter++);
            out.current.vertices.insert(m[v]);
        }
        for (const auto& arc : pl.rule->rhs.arcs) {
            Hyperarc h{arc.label, {}};
            for (const Vertex& v : arc.verts)
                h.verts.push_back(m.at(v));
            out.current.add(std::move(h));
        }
    }
    return out;
}

CHRGenResult chr_generate(const CHRGrammar& g, int steps, int axiom_depth) {
    CHRState s = chr_initial(g, axiom_depth);
    for (int i = 0; i < steps; ++i)
        s = chr_parallel_step(g, s);
    CHRGenResult res;
    res.frontierTruncated = s.frontierTruncated;
    res.full = s.current;
    for (const auto& arc : s.current.arcs)
        if (g.terminals.count(arc.label))
            res.graph.add(arc);
    return res;
}

// ---- rational <-> CHR ----

static Symbol state_nt(int s) { return "q" + std::to_string(s); }

CHRGrammar from_rational(const RationalGraphPresentation& p) {
    for (const auto& e : p.t.edges)
        if (e.in.size() > 1 || e.out.size() > 1)
            throw ValidationError(
                "from_rational: transducer has edge words longer than 1; apply "
                "normalize_edges first");
    LabelledTransducer t = p.t;
    if (p.vertexRestriction) {
        t = restrict_pair(t, *p.vertexRestriction, *p.vertexRestriction);
    }

    CHRGrammar g;
    for (const Symbol& x : p.X().symbols())
        g.contextual[x] = 2;
    for (const Symbol& a : p.Sigma().symbols())
        g.terminals[a] = 2;

    g.nonterminals["start"] = 2;
    for (int s = 0; s < t.n_states; ++s)
        g.nonterminals[state_nt(s)] = 2;

    g.axiom = TreeAxiom{p.X(), "start", 2};

    // start rule: plant one non-terminal per initial state at the root pair
    {
        ContextualRule r;
        r.formal = {"start", {"x1", "x2"}};
        for (int s : t.initial)
            r.rhs.add({state_nt(s), {"x1", "x2"}});
        r.rhs.vertices.insert({"x1", "x2"});
        g.rules.push_back(std::move(r));
    }

    for (int s = 0; s < t.n_states; ++s) {
        ContextualRule r;
        r.formal = {state_nt(s), {"x1", "x2"}};
        // Context: one child subtree arc per letter actually consumed.
        std::set<Symbol> inLetters, outLetters;
        for (const auto& e : t.edges) {
            if (e.from != s) continue;
            if (!e.in.empty()) inLetters.insert(e.in[0]);
            if (!e.out.empty()) outLetters.insert(e.out[0]);
        }
        for (const Symbol& l : inLetters)
            r.context.add_arc("x1", l, "u_" + l);
        for (const Symbol& l : outLetters)
            r.context.add_arc("x2", l, "v_" + l);
        for (const auto& e : t.edges) {
            if (e.from != s) continue;
            Vertex a = e.in.empty() ? "x1" : "u_" + e.in[0];
            Vertex b = e.out.empty() ? "x2" : "v_" + e.out[0];
            r.rhs.add({state_nt(e.to), {a, b}});
        }
        auto lit = t.labels.find(s);
        if (lit != t.labels.end() &&
            std::find(t.final.begin(), t.final.end(), s) != t.final.end())
            for (const Symbol& a : lit->second)
                r.rhs.add_arc("x1", a, "x2");
        g.rules.push_back(std::move(r));
    }
    g.validate();
    return g;
}

bool is_tree_separated(const CHRGrammar& g) {
    // axiom must be a tree
    if (const auto* hg = std::get_if<Hypergraph>(&g.axiom)) {
        std::map<Vertex, int> indeg;
        int ntCount = 0;
        for (const Vertex& v : hg->vertices) indeg[v] = 0;
        for (const auto& arc : hg->arcs) {
            if (g.is_nonterminal(arc.label)) {
                ++ntCount;
                continue;
            }
            if (arc.verts.size() == 2) indeg[arc.verts[1]]++;
        }
        if (ntCount != 1) return false;
        int roots = 0;
        for (const auto& [v, d] : indeg) {
            if (d == 0) ++roots;
            if (d > 1) return false;
        }
        if (roots != 1) return false;
    }
    // TreeAxiom and HRAxiom-presented trees are accepted as given.

    for (const ContextualRule& r : g.rules) {
        std::set<Vertex> formals(r.formal.verts.begin(), r.formal.verts.end());
        // connected components of the context
        std::map<Vertex, int> comp;
        int nc = 0;
        for (const Vertex& v : r.context.vertices)
            if (!comp.count(v)) {
                std::vector<Vertex> stack = {v};
                comp[v] = nc;
                while (!stack.empty()) {
                    Vertex u = stack.back();
                    stack.pop_back();
                    for (const auto& arc : r.context.arcs) {
                        bool touches = std::find(arc.verts.begin(), arc.verts.end(), u) !=
                                       arc.verts.end();
                        if (!touches) continue;
                        for (const Vertex& w : arc.verts)
                            if (!comp.count(w)) {
                                comp[w] = nc;
                                stack.push_back(w);
                            }
                    }
                }
                ++nc;
            }
        // each component: a tree rooted at exactly one formal vertex,
        // containing no other formal vertex
        std::set<int> usedRoots;
        for (int c = 0; c < nc; ++c) {
            std::vector<Vertex> verts;
            for (const auto& [v, cc] : comp)
                if (cc == c) verts.push_back(v);
            std::map<Vertex, int> indeg;
            for (const Vertex& v : verts) indeg[v] = 0;
            std::size_t arcCount = 0;
            for (const auto& arc : r.context.arcs) {
                if (arc.verts.size() != 2) return false;
                if (comp.at(arc.verts[0]) != c) continue;
                ++arcCount;
                indeg[arc.verts[1]]++;
            }
            Vertex root;
            int roots = 0;
            for (const auto& [v, d] : indeg) {
                if (d == 0) {
                    root = v;
                    ++roots;
                }
                if (d > 1) return false;
            }
            if (roots != 1) return false;
            if (arcCount != verts.size() - 1) return false;  // cycle among roots' component
            if (!formals.count(root)) return false;
            int formalInside = 0;
            for (const Vertex& v : verts)
                if (formals.count(v)) ++formalInside;
            if (formalInside != 1) return false;
            if (!usedRoots.insert(static_cast<int>(
                    std::find(r.formal.verts.begin(), r.formal.verts.end(), root) -
                    r.formal.verts.begin())).second)
                return false;
        }
    }
    return true;
}

RationalGraphPresentation to_rational(const CHRGrammar& g) {
    if (!is_tree_separated(g))
        throw ValidationError("to_rational: grammar is not tree-separated");
    const auto* ta = std::get_if<TreeAxiom>(&g.axiom);
    if (!ta)
        throw ValidationError(
            "to_rational: supported encoding requires a complete-tree axiom");
    for (const auto& [nt, ar] : g.nonterminals)
        if (ar != 2)
            throw ValidationError("to_rational: non-terminal '" + nt +
                                  "' has arity != 2; unsupported encoding");

    // transducer states: one per non-terminal, plus per-arc final states
    std::map<Symbol, int> stateOf;
    LabelledTransducer t;
    t.X = ta->directions;
    std::vector<Symbol> sigma;
    for (const auto& [s, ar] : g.terminals)
        if (ar == 2) sigma.push_back(s);
    t.Sigma = SymbolAlphabet(sigma);
    for (const auto& [nt, ar] : g.nonterminals)
        stateOf[nt] = t.n_states++;
    t.initial = {stateOf.at(ta->rootNonTerminal)};

    for (const ContextualRule& r : g.rules) {
        if (r.formal.verts.size() != 2)
            throw ValidationError("to_rational: formal arity != 2");
        const Vertex& x1 = r.formal.verts[0];
        const Vertex& x2 = r.formal.verts[1];
        // paths from each formal root through its context tree
        std::map<Vertex, std::pair<int, Word>> place;  // vertex -> (side, path)
        place[x1] = {0, {}};
        place[x2] = {1, {}};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& arc : r.context.arcs) {
                auto it = place.find(arc.verts[0]);
                if (it == place.end() || place.count(arc.verts[1])) continue;
                Word path = it->second.second;
                path.push_back(arc.label);
                place[arc.verts[1]] = {it->second.first, std::move(path)};
                grew = true;
            }
        }
        auto locate = [&](const Vertex& v) {
            auto it = place.find(v);
            if (it == place.end())
                throw ValidationError("to_rational: rhs vertex '" + v +
                                      "' is neither a formal nor a context-tree vertex; "
                                      "unsupported encoding");
            return it->second;
        };
        int from = stateOf.at(r.formal.label);
        for (const auto& arc : r.rhs.arcs) {
            if (g.is_nonterminal(arc.label)) {
                if (arc.verts.size() != 2)
                    throw ValidationError("to_rational: rhs non-terminal arity != 2");
                auto [s1, p1] = locate(arc.verts[0]);
                auto [s2, p2] = locate(arc.verts[1]);
                if (s1 != 0 || s2 != 1)
                    throw ValidationError(
                        "to_rational: rhs non-terminal does not span the two context "
                        "trees; unsupported encoding");
                t.edges.push_back({from, p1, p2, stateOf.at(arc.label)});
            } else if (arc.verts.size() == 2) {
                auto [s1, p1] = locate(arc.verts[0]);
                auto [s2, p2] = locate(arc.verts[1]);
                if (s1 != 0 || s2 != 1)
                    throw ValidationError(
                        "to_rational: terminal arc does not span the two context trees; "
                        "unsupported encoding");
                int fin = t.n_states++;
                t.edges.push_back({from, p1, p2, fin});
                t.final.push_back(fin);
                t.labels[fin].insert(arc.label);
            } else {
                throw ValidationError("to_rational: unsupported rhs hyperarc arity");
            }
        }
    }
    RationalGraphPresentation out;
    out.t = std::move(t);
    return out;
}

// ---- PCP ----

void PCPInstance::validate() const {
    if (pairs.empty())
        throw ValidationError("pcp: instance needs at least one pair");
    for (const auto& [u, v] : pairs) {
        if (u.empty() || v.empty())
            throw ValidationError("pcp: words must be non-empty");
        for (char c : u + v)
            if (c != 'a' && c != 'b')
                throw ValidationError("pcp: words must be over {a,b}");
    }
}

CHRGrammar pcp_encode(const PCPInstance& inst) {
    inst.validate();
    CHRGrammar g;
    g.terminals = {{"a", 2}, {"b", 2}, {"root", 2}, {"#", 2}};
    g.nonterminals = {{"fwd", 2}, {"nxt", 2}, {"chkA", 2}, {"chkB", 2}};

    Hypergraph axiom;
    axiom.add_arc("0", "root", "1");
    axiom.add({"fwd", {"0", "1"}});
    g.axiom = axiom;

    // R1: grow one index level of the two prefix trees.
    {
        ContextualRule r;
        r.formal = {"fwd", {"x", "y"}};
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            const auto& [u, v] = inst.pairs[i];
            std::string tag = std::to_string(i + 1);
            Vertex prev = "x";
            for (std::size_t k = 0; k < u.size(); ++k) {
                Vertex next = (k + 1 == u.size()) ? "U" + tag
                                                  : "U" + tag + "_" + std::to_string(k + 1);
                r.rhs.add_arc(prev, std::string(1, u[k]), next);
                prev = next;
            }
            Vertex uend = prev;
            prev = "y";
            for (std::size_t k = 0; k < v.size(); ++k) {
                Vertex next = (k + 1 == v.size()) ? "V" + tag
                                                  : "V" + tag + "_" + std::to_string(k + 1);
                r.rhs.add_arc(prev, std::string(1, v[k]), next);
                prev = next;
            }
            Vertex vend = prev;
            r.rhs.add({"nxt", {uend, vend}});
            r.rhs.add({"fwd", {uend, vend}});
        }
        g.rules.push_back(std::move(r));
    }
    // R2: arm both letter walkers at the matched extremities.
    {
        ContextualRule r;
        r.formal = {"nxt", {"x", "y"}};
        r.rhs.add({"chkA", {"x", "y"}});
        r.rhs.add({"chkB", {"x", "y"}});
        g.rules.push_back(std::move(r));
    }
    // R3A / R3B: step both branches back over one equal letter.
    for (char c : {'a', 'b'}) {
        ContextualRule r;
        r.formal = {c == 'a' ? "chkA" : "chkB", {"x", "y"}};
        r.context.add_arc("px", std::string(1, c), "x");
        r.context.add_arc("py", std::string(1, c), "y");
        r.rhs.add({"chkA", {"px", "py"}});
        r.rhs.add({"chkB", {"px", "py"}});
        g.rules.push_back(std::move(r));
    }
    // R4A / R4B: both walkers exhausted at the root pair.
    for (const char* nt : {"chkA", "chkB"}) {
        ContextualRule r;
        r.formal = {nt, {"x", "y"}};
        r.context.add_arc("x", "root", "y");
        r.rhs.add_arc("x", "#", "y");
        g.rules.push_back(std::move(r));
    }
    g.validate();
    return g;
}

bool pcp_solvable(const PCPInstance& inst, std::size_t max_indices) {
    // enumerate index sequences breadth-first, pruning on prefix mismatch
    struct Node {
        std::string u, v;
        std::size_t len;
    };
    std::vector<Node> layer = {{"", "", 0}};
    for (std::size_t step = 0; step < max_indices; ++step) {
        std::vector<Node> next;
        for (const Node& n : layer)
            for (const auto& [U, V] : inst.pairs) {
                Node m{n.u + U, n.v + V, n.len + 1};
                std::size_t pl = std::min(m.u.size(), m.v.size());
                if (m.u.compare(0, pl, m.v, 0, pl) != 0)
                    continue;
                if (m.u == m.v)
                    return true;
                next.push_back(std::move(m));
            }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    return false;
}

}  // namespace infgraph
