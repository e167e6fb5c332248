#include "infgraph/hypergraph.hpp"

#include <algorithm>
#include <sstream>

namespace infgraph {

void Hypergraph::add(Hyperarc h) {
    for (const Vertex& v : h.verts)
        vertices.insert(v);
    arcs.insert(std::move(h));
}

void Hypergraph::add_arc(const Vertex& s, const Symbol& a, const Vertex& t) {
    add({a, {s, t}});
}

void Hypergraph::add_colour(const Symbol& c, const Vertex& v) {
    add({c, {v}});
}

std::vector<Hyperarc> Hypergraph::binary_arcs() const {
    std::vector<Hyperarc> out;
    for (const auto& h : arcs)
        if (h.verts.size() == 2) out.push_back(h);
    return out;
}

std::vector<Hyperarc> Hypergraph::colours() const {
    std::vector<Hyperarc> out;
    for (const auto& h : arcs)
        if (h.verts.size() == 1) out.push_back(h);
    return out;
}

bool is_deterministic(const Graph& g) {
    std::set<std::pair<Vertex, Symbol>> seen;
    std::map<std::pair<Vertex, Symbol>, Vertex> target;
    for (const auto& h : g.binary_arcs()) {
        auto key = std::make_pair(h.verts[0], h.label);
        auto it = target.find(key);
        if (it != target.end() && it->second != h.verts[1])
            return false;
        target.emplace(key, h.verts[1]);
    }
    return true;
}

Graph unfold(const Graph& g, const Vertex& root, int depth) {
    if (!g.vertices.count(root))
        throw ValidationError("unfold: unknown root vertex '" + root + "'");
    Graph out;
    out.vertices.insert(root);
    struct Node {
        Vertex path;
        Vertex at;
        int d;
    };
    std::vector<Node> frontier = {{root, root, 0}};
    while (!frontier.empty()) {
        std::vector<Node> next;
        for (const auto& n : frontier) {
            if (n.d >= depth) continue;
            for (const auto& h : g.binary_arcs()) {
                if (h.verts[0] != n.at) continue;
                Vertex child = n.path + "." + h.label + "." + h.verts[1];
                out.add_arc(n.path, h.label, child);
                next.push_back({child, h.verts[1], n.d + 1});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

// Per-vertex invariant used to prune the isomorphism search.
struct Signature {
    std::map<std::pair<Symbol, int>, int> degree;  // (label, 0=out/1=in) -> count
    std::multiset<Symbol> colours;
    auto operator<=>(const Signature&) const = default;
};

std::map<Vertex, Signature> signatures(const Graph& g) {
    std::map<Vertex, Signature> sig;
    for (const Vertex& v : g.vertices)
        sig[v];
    for (const auto& h : g.arcs) {
        if (h.verts.size() == 2) {
            sig[h.verts[0]].degree[{h.label, 0}]++;
            sig[h.verts[1]].degree[{h.label, 1}]++;
        } else if (h.verts.size() == 1) {
            sig[h.verts[0]].colours.insert(h.label);
        }
    }
    return sig;
}

struct IsoSearch {
    const Graph& g1;
    const Graph& g2;
    std::vector<Vertex> order;                      // g1 vertices in assignment order
    std::map<Vertex, std::vector<Vertex>> cand;     // signature-compatible g2 vertices
    std::map<Vertex, Vertex> fwd;
    std::set<Vertex> used;
    // label sets between ordered vertex pairs
    std::map<std::pair<Vertex, Vertex>, std::set<Symbol>> lab1, lab2;

    bool compatible(const Vertex& u, const Vertex& m) {
        for (const auto& [v, img] : fwd) {
            auto l1 = lab1.find({u, v});
            auto l2 = lab2.find({m, img});
            if ((l1 == lab1.end()) != (l2 == lab2.end())) return false;
            if (l1 != lab1.end() && l1->second != l2->second) return false;
            auto r1 = lab1.find({v, u});
            auto r2 = lab2.find({img, m});
            if ((r1 == lab1.end()) != (r2 == lab2.end())) return false;
            if (r1 != lab1.end() && r1->second != r2->second) return false;
        }
        // self loops
        auto s1 = lab1.find({u, u});
        auto s2 = lab2.find({m, m});
        if ((s1 == lab1.end()) != (s2 == lab2.end())) return false;
        if (s1 != lab1.end() && s1->second != s2->second) return false;
        return true;
    }

    bool search(std::size_t k) {
        if (k == order.size()) return true;
        const Vertex& u = order[k];
        for (const Vertex& m : cand[u]) {
            if (used.count(m)) continue;
            if (!compatible(u, m)) continue;
            fwd[u] = m;
            used.insert(m);
            if (search(k + 1)) return true;
            fwd.erase(u);
            used.erase(m);
        }
        return false;
    }
};

}  // namespace

IsoResult isomorphic(const Graph& g1, const Graph& g2) {
    IsoResult res;
    if (g1.vertices.size() != g2.vertices.size() || g1.arcs.size() != g2.arcs.size())
        return res;
    auto s1 = signatures(g1), s2 = signatures(g2);
    // Group g2 vertices by signature.
    std::map<Signature, std::vector<Vertex>> bySig;
    for (const auto& [v, s] : s2)
        bySig[s].push_back(v);

    IsoSearch search{g1, g2, {}, {}, {}, {}, {}, {}};
    for (const auto& h : g1.arcs)
        if (h.verts.size() == 2)
            search.lab1[{h.verts[0], h.verts[1]}].insert(h.label);
    for (const auto& h : g2.arcs)
        if (h.verts.size() == 2)
            search.lab2[{h.verts[0], h.verts[1]}].insert(h.label);

    for (const auto& [v, s] : s1) {
        auto it = bySig.find(s);
        if (it == bySig.end())
            return res;
        search.cand[v] = it->second;
    }
    // Assign most-constrained vertices first.
    for (const auto& [v, c] : search.cand)
        search.order.push_back(v);
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](const Vertex& a, const Vertex& b) {
                         return search.cand[a].size() < search.cand[b].size();
                     });
    if (!search.search(0))
        return res;
    res.found = true;
    res.witness = search.fwd;
    return res;
}

static std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string to_dot(const Graph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    std::map<Vertex, std::vector<Symbol>> cols;
    for (const auto& h : g.colours())
        cols[h.verts[0]].push_back(h.label);
    for (const Vertex& v : g.vertices) {
        os << "  \"" << dot_escape(v) << "\"";
        std::string name = v.empty() ? "ε" : v;
        auto it = cols.find(v);
        if (it != cols.end()) {
            std::string lbl = name;
            for (const Symbol& c : it->second)
                lbl += "\\n" + c;
            os << " [label=\"" << dot_escape(lbl) << "\"]";
        } else if (v.empty()) {
            os << " [label=\"ε\"]";
        }
        os << ";\n";
    }
    for (const auto& h : g.binary_arcs())
        os << "  \"" << dot_escape(h.verts[0]) << "\" -> \"" << dot_escape(h.verts[1])
           << "\" [label=\"" << dot_escape(h.label) << "\"];\n";
    os << "}\n";
    return os.str();
}

SymbolAlphabet barred_alphabet(const SymbolAlphabet& directions) {
    std::vector<Symbol> syms = directions.symbols();
    for (const Symbol& s : directions.symbols())
        syms.push_back(s + "~");
    return SymbolAlphabet(std::move(syms));
}

bool is_barred(const Symbol& s) {
    return s.size() >= 2 && s.back() == '~';
}

Symbol strip_bar(const Symbol& s) {
    return is_barred(s) ? s.substr(0, s.size() - 1) : s;
}

Graph inverse_substitution_explicit(const Graph& g,
                                    const std::map<Symbol, FiniteAutomaton>& phi,
                                    const std::optional<FiniteAutomaton>& restriction,
                                    const Vertex& root) {
    Graph out;
    // Restriction: vertices of g reached from the root by a path whose
    // label word lies in the restriction language.
    std::optional<std::set<Vertex>> allowed;
    if (restriction) {
        if (!g.vertices.count(root))
            throw ValidationError("inverse substitution: restriction root '" + root +
                                  "' not in graph");
        FiniteAutomaton d = determinize(*restriction);
        std::set<int> dfin(d.final.begin(), d.final.end());
        allowed.emplace();
        std::set<std::pair<int, Vertex>> seen;
        std::vector<std::pair<int, Vertex>> stack;
        if (!d.initial.empty()) {
            stack.push_back({d.initial[0], root});
            seen.insert(stack.back());
        }
        while (!stack.empty()) {
            auto [s, v] = stack.back();
            stack.pop_back();
            if (dfin.count(s)) allowed->insert(v);
            for (const auto& h : g.binary_arcs()) {
                if (h.verts[0] != v) continue;
                for (const auto& t : d.transitions)
                    if (t.from == s && t.label == h.label) {
                        auto n = std::make_pair(t.to, h.verts[1]);
                        if (seen.insert(n).second) stack.push_back(n);
                    }
            }
        }
    }

    auto vertex_ok = [&](const Vertex& v) { return !allowed || allowed->count(v) > 0; };

    std::set<Symbol> glabels;
    for (const auto& h : g.binary_arcs())
        glabels.insert(h.label);

    for (const auto& [d, nfa] : phi) {
        for (const auto& t : nfa.transitions)
            if (!t.label.empty() && !glabels.count(strip_bar(t.label)))
                throw ValidationError("inverse substitution: direction '" + strip_bar(t.label) +
                                      "' has no interpretation in the graph");
        std::set<int> fin(nfa.final.begin(), nfa.final.end());
        for (const Vertex& x : g.vertices) {
            if (!vertex_ok(x)) continue;
            // Product walk of the phi automaton with g, barred letters
            // traversed against arc direction.
            std::set<std::pair<int, Vertex>> seen;
            std::vector<std::pair<int, Vertex>> stack;
            for (int s : nfa.initial) {
                auto c = std::make_pair(s, x);
                if (seen.insert(c).second) stack.push_back(c);
            }
            while (!stack.empty()) {
                auto [s, v] = stack.back();
                stack.pop_back();
                if (fin.count(s) && vertex_ok(v))
                    out.add_arc(x, d, v);
                for (const auto& t : nfa.transitions) {
                    if (t.from != s) continue;
                    if (t.label.empty()) {
                        auto c = std::make_pair(t.to, v);
                        if (seen.insert(c).second) stack.push_back(c);
                    } else if (is_barred(t.label)) {
                        Symbol base = strip_bar(t.label);
                        for (const auto& h : g.binary_arcs())
                            if (h.verts[1] == v && h.label == base) {
                                auto c = std::make_pair(t.to, h.verts[0]);
                                if (seen.insert(c).second) stack.push_back(c);
                            }
                    } else {
                        for (const auto& h : g.binary_arcs())
                            if (h.verts[0] == v && h.label == t.label) {
                                auto c = std::make_pair(t.to, h.verts[1]);
                                if (seen.insert(c).second) stack.push_back(c);
                            }
                    }
                }
            }
        }
    }
    if (allowed)
        for (const Vertex& v : *allowed) out.vertices.insert(v);
    return out;
}

}  // namespace infgraph
