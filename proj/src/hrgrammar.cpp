#include "infgraph/hrgrammar.hpp"

#include <algorithm>

namespace infgraph {

ValidationReport validate(const HRGrammar& g) {
    ValidationReport rep;
    auto issue = [&](const std::string& s) { rep.issues.push_back(s); };

    for (const auto& [t, ar] : g.terminals) {
        if (ar != 1 && ar != 2)
            issue("terminal '" + t + "' has arity " + std::to_string(ar) +
                  " (only 1 and 2 are graph-admissible)");
        if (g.nonterminals.count(t))
            issue("symbol '" + t + "' is both terminal and non-terminal");
    }
    for (const auto& [nt, ar] : g.nonterminals)
        if (ar < 1)
            issue("non-terminal '" + nt + "' has arity " + std::to_string(ar));

    auto check_graph = [&](const Hypergraph& h, const std::string& where) {
        for (const auto& arc : h.arcs) {
            int ar = -1;
            if (auto it = g.nonterminals.find(arc.label); it != g.nonterminals.end())
                ar = it->second;
            else if (auto it2 = g.terminals.find(arc.label); it2 != g.terminals.end())
                ar = it2->second;
            else
                issue(where + ": undeclared label '" + arc.label + "'");
            if (ar >= 0 && static_cast<int>(arc.verts.size()) != ar)
                issue(where + ": hyperarc '" + arc.label + "' has " +
                      std::to_string(arc.verts.size()) + " vertices, declared arity " +
                      std::to_string(ar));
            if (g.nonterminals.count(arc.label) && !g.rules.count(arc.label))
                issue(where + ": non-terminal '" + arc.label + "' has no rule");
        }
    };
    check_graph(g.axiom, "axiom");
    for (const auto& [nt, rule] : g.rules) {
        if (!g.nonterminals.count(nt)) {
            issue("rule for undeclared non-terminal '" + nt + "'");
            continue;
        }
        if (static_cast<int>(rule.formals.size()) != g.nonterminals.at(nt))
            issue("rule for '" + nt + "': formal count differs from arity");
        std::set<Vertex> distinct(rule.formals.begin(), rule.formals.end());
        if (distinct.size() != rule.formals.size())
            issue("rule for '" + nt + "': formal vertices are not pairwise distinct");
        check_graph(rule.rhs, "rule for '" + nt + "'");
    }
    return rep;
}

GenerationState initial_state(const HRGrammar& g) {
    return {g.axiom, 0, 0};
}

GenerationState rewrite_step(const HRGrammar& g, const GenerationState& s,
                             const Hyperarc& which) {
    if (!s.current.arcs.count(which))
        throw ValidationError("rewrite_step: hyperarc not present in current graph");
    auto rit = g.rules.find(which.label);
    if (rit == g.rules.end())
        throw ValidationError("rewrite_step: no rule for '" + which.label + "'");
    const HRRule& rule = rit->second;
    if (rule.formals.size() != which.verts.size())
        throw ValidationError("rewrite_step: arity mismatch for '" + which.label + "'");

    GenerationState out = s;
    out.current.arcs.erase(which);
    std::map<Vertex, Vertex> glue;
    for (std::size_t i = 0; i < rule.formals.size(); ++i)
        glue[rule.formals[i]] = which.verts[i];
    const Vertex& parent = which.verts[0];
    for (const Vertex& v : rule.rhs.vertices) {
        if (glue.count(v)) continue;
        glue[v] = parent + "/" + v + "#" + std::to_string(out.freshCounter++);
        out.current.vertices.insert(glue[v]);
    }
    for (const auto& arc : rule.rhs.arcs) {
        Hyperarc h{arc.label, {}};
        for (const Vertex& v : arc.verts)
            h.verts.push_back(glue.at(v));
        out.current.add(std::move(h));
    }
    return out;
}

GenerationState parallel_step(const HRGrammar& g, const GenerationState& s) {
    // std::set iteration gives a deterministic occurrence order.
    std::vector<Hyperarc> occ;
    for (const auto& arc : s.current.arcs)
        if (g.is_nonterminal(arc.label))
            occ.push_back(arc);
    GenerationState out = s;
    for (const auto& arc : occ)
        out = rewrite_step(g, out, arc);
    out.level = s.level + 1;
    return out;
}

Graph generate(const HRGrammar& g, int n) {
    GenerationState s = initial_state(g);
    for (int i = 0; i < n; ++i)
        s = parallel_step(g, s);
    Graph out;
    for (const auto& arc : s.current.arcs)
        if (g.terminals.count(arc.label))
            out.add(arc);
    return out;
}

// ---- reachability across rule interfaces ----

namespace {

// Closure of `start` inside graph h where non-terminal hyperarcs act
// through the current summaries.
std::set<Vertex> close_over(const HRGrammar& g, const Hypergraph& h, std::set<Vertex> start,
                            const ReachSummary& sum, bool symmetric) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& arc : h.arcs) {
            if (arc.verts.size() == 2 && g.terminals.count(arc.label)) {
                if (start.count(arc.verts[0]) && start.insert(arc.verts[1]).second)
                    changed = true;
                if (symmetric && start.count(arc.verts[1]) &&
                    start.insert(arc.verts[0]).second)
                    changed = true;
            } else if (g.is_nonterminal(arc.label)) {
                auto rit = sum.reach.find(arc.label);
                if (rit == sum.reach.end()) continue;
                for (auto [i, j] : rit->second)
                    if (start.count(arc.verts[i]) && start.insert(arc.verts[j]).second)
                        changed = true;
            }
        }
    }
    return start;
}

std::set<Vertex> rule_sources(const HRGrammar& g, const Hypergraph& h,
                              const Symbol& sourceColour, const ReachSummary& sum) {
    std::set<Vertex> src;
    for (const auto& arc : h.arcs) {
        if (arc.verts.size() == 1 && arc.label == sourceColour)
            src.insert(arc.verts[0]);
        if (g.is_nonterminal(arc.label)) {
            auto sit = sum.fromSource.find(arc.label);
            if (sit == sum.fromSource.end()) continue;
            for (int j : sit->second)
                src.insert(arc.verts[j]);
        }
    }
    return src;
}

std::string subset_tag(const std::set<int>& s, int arity) {
    std::string tag;
    for (int i = 0; i < arity; ++i)
        tag += s.count(i) ? '1' : '0';
    return tag;
}

}  // namespace

ReachSummary reachability_summary(const HRGrammar& g, const Symbol& sourceColour,
                                  bool symmetric) {
    ReachSummary sum;
    for (const auto& [nt, ar] : g.nonterminals) {
        sum.reach[nt];
        sum.fromSource[nt];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        ++sum.iterations;
        for (const auto& [nt, rule] : g.rules) {
            int arity = static_cast<int>(rule.formals.size());
            // attachment-to-attachment paths
            for (int i = 0; i < arity; ++i) {
                std::set<Vertex> reach =
                    close_over(g, rule.rhs, {rule.formals[i]}, sum, symmetric);
                for (int j = 0; j < arity; ++j)
                    if (i != j && reach.count(rule.formals[j]))
                        if (sum.reach[nt].emplace(i, j).second)
                            changed = true;
            }
            // attachments reachable from inner sources
            std::set<Vertex> src = rule_sources(g, rule.rhs, sourceColour, sum);
            std::set<Vertex> reach = close_over(g, rule.rhs, std::move(src), sum, symmetric);
            for (int j = 0; j < arity; ++j)
                if (reach.count(rule.formals[j]))
                    if (sum.fromSource[nt].insert(j).second)
                        changed = true;
        }
    }
    return sum;
}

HRGrammar accessible_colouring(const HRGrammar& g, const Symbol& sourceColour,
                               const Symbol& newColour, bool symmetric,
                               int* iterations_out) {
    auto sit = g.terminals.find(sourceColour);
    if (sit == g.terminals.end() || sit->second != 1)
        throw ValidationError("accessible_colouring: '" + sourceColour +
                              "' is not an arity-1 terminal");
    for (const auto& [nt, ar] : g.nonterminals)
        if (ar > 12)
            throw ValidationError("accessible_colouring: non-terminal '" + nt +
                                  "' has arity > 12; interface abstraction would need 2^" +
                                  std::to_string(ar) + " variants");
    ReachSummary sum = reachability_summary(g, sourceColour, symmetric);
    if (iterations_out) *iterations_out = sum.iterations;

    HRGrammar out;
    out.terminals = g.terminals;
    out.terminals[newColour] = 1;

    auto annotate = [&](const Hypergraph& h, const std::set<Vertex>& reached) {
        // relabel non-terminals with the reached subset of their
        // attachments; colour reached vertices
        Hypergraph res;
        res.vertices = h.vertices;
        std::vector<std::pair<Symbol, std::set<int>>> needed;
        for (const auto& arc : h.arcs) {
            if (g.is_nonterminal(arc.label)) {
                std::set<int> S;
                for (std::size_t i = 0; i < arc.verts.size(); ++i)
                    if (reached.count(arc.verts[i])) S.insert(static_cast<int>(i));
                Symbol lbl = arc.label + "@" + subset_tag(S, static_cast<int>(arc.verts.size()));
                res.add({lbl, arc.verts});
                needed.emplace_back(arc.label, std::move(S));
            } else {
                res.add(arc);
            }
        }
        for (const Vertex& v : reached)
            if (h.vertices.count(v)) res.add_colour(newColour, v);
        return std::make_pair(res, needed);
    };

    // Axiom first, then the (non-terminal, subset) variants it demands.
    std::set<Vertex> axReached =
        close_over(g, g.axiom, rule_sources(g, g.axiom, sourceColour, sum), sum, symmetric);
    auto [newAxiom, pending] = annotate(g.axiom, axReached);
    out.axiom = newAxiom;

    std::set<std::pair<Symbol, std::set<int>>> done;
    while (!pending.empty()) {
        auto [nt, S] = pending.back();
        pending.pop_back();
        if (!done.insert({nt, S}).second) continue;
        const HRRule& rule = g.rules.at(nt);
        int arity = static_cast<int>(rule.formals.size());
        Symbol lbl = nt + "@" + subset_tag(S, arity);
        out.nonterminals[lbl] = arity;

        std::set<Vertex> src = rule_sources(g, rule.rhs, sourceColour, sum);
        for (int i : S)
            src.insert(rule.formals[i]);
        std::set<Vertex> reached = close_over(g, rule.rhs, std::move(src), sum, symmetric);
        auto [rhs, more] = annotate(rule.rhs, reached);
        out.rules[lbl] = {rule.formals, std::move(rhs)};
        for (auto& m : more)
            pending.push_back(std::move(m));
    }
    return out;
}

// ---- colour restriction ----

HRGrammar colour_restriction(const HRGrammar& g, const Symbol& colour) {
    auto cit = g.terminals.find(colour);
    if (cit == g.terminals.end() || cit->second != 1)
        throw ValidationError("colour_restriction: '" + colour + "' is not an arity-1 terminal");

    // colOut[A]: attachments that A's subtree eventually colours.
    std::map<Symbol, std::set<int>> colOut;
    for (const auto& [nt, ar] : g.nonterminals)
        colOut[nt];
    auto coloured_in = [&](const Hypergraph& h, const std::set<Vertex>& fromOutside) {
        std::set<Vertex> col = fromOutside;
        for (const auto& arc : h.arcs) {
            if (arc.verts.size() == 1 && arc.label == colour)
                col.insert(arc.verts[0]);
            if (g.is_nonterminal(arc.label))
                for (int j : colOut[arc.label])
                    col.insert(arc.verts[j]);
        }
        return col;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [nt, rule] : g.rules) {
            std::set<Vertex> col = coloured_in(rule.rhs, {});
            for (std::size_t i = 0; i < rule.formals.size(); ++i)
                if (col.count(rule.formals[i]))
                    if (colOut[nt].insert(static_cast<int>(i)).second)
                        changed = true;
        }
    }

    HRGrammar out;
    out.terminals = g.terminals;

    auto restrict_graph = [&](const Hypergraph& h, const std::set<Vertex>& col) {
        Hypergraph res;
        std::vector<std::pair<Symbol, std::set<int>>> needed;
        for (const auto& arc : h.arcs) {
            if (g.is_nonterminal(arc.label)) {
                std::set<int> S;
                for (std::size_t i = 0; i < arc.verts.size(); ++i)
                    if (col.count(arc.verts[i])) S.insert(static_cast<int>(i));
                Symbol lbl = arc.label + "@" + subset_tag(S, static_cast<int>(arc.verts.size()));
                res.add({lbl, arc.verts});
                needed.emplace_back(arc.label, std::move(S));
            } else if (arc.verts.size() == 2) {
                if (col.count(arc.verts[0]) && col.count(arc.verts[1]))
                    res.add(arc);
            } else if (arc.verts.size() == 1) {
                if (col.count(arc.verts[0]))
                    res.add(arc);
            }
        }
        return std::make_pair(res, needed);
    };

    std::set<Vertex> axCol = coloured_in(g.axiom, {});
    auto [newAxiom, pending] = restrict_graph(g.axiom, axCol);
    out.axiom = newAxiom;

    std::set<std::pair<Symbol, std::set<int>>> done;
    while (!pending.empty()) {
        auto [nt, S] = pending.back();
        pending.pop_back();
        if (!done.insert({nt, S}).second) continue;
        const HRRule& rule = g.rules.at(nt);
        int arity = static_cast<int>(rule.formals.size());
        Symbol lbl = nt + "@" + subset_tag(S, arity);
        out.nonterminals[lbl] = arity;
        std::set<Vertex> outside;
        for (int i : S)
            outside.insert(rule.formals[i]);
        std::set<Vertex> col = coloured_in(rule.rhs, outside);
        auto [rhs, more] = restrict_graph(rule.rhs, col);
        out.rules[lbl] = {rule.formals, std::move(rhs)};
        for (auto& m : more)
            pending.push_back(std::move(m));
    }
    return out;
}

}  // namespace infgraph
