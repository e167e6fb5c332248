#include "infgraph/json_io.hpp"

#include <fstream>

namespace infgraph {

static std::vector<Symbol> symbol_list(const json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string("json: ") + what + " must be an array of symbols");
    std::vector<Symbol> out;
    for (const auto& e : j)
        out.push_back(e.get<std::string>());
    return out;
}

static json words_json(const SymbolAlphabet&, const Word& w) { return word_to_string(w); }

// ---- automaton ----

json automaton_to_json(const FiniteAutomaton& a) {
    json j;
    j["alphabet"] = a.alphabet.symbols();
    j["states"] = a.n_states;
    j["initial"] = a.initial;
    j["final"] = a.final;
    json trs = json::array();
    for (const auto& t : a.transitions)
        trs.push_back(json::array({t.from, t.label, t.to}));
    j["transitions"] = trs;
    return j;
}

FiniteAutomaton automaton_from_json(const json& j) {
    try {
        FiniteAutomaton a;
        a.alphabet = SymbolAlphabet(symbol_list(j.at("alphabet"), "alphabet"));
        a.n_states = j.at("states").get<int>();
        a.initial = j.at("initial").get<std::vector<int>>();
        a.final = j.at("final").get<std::vector<int>>();
        for (const auto& t : j.at("transitions")) {
            if (!t.is_array() || t.size() != 3)
                throw ValidationError("json: transition must be [src, sym, dst]");
            a.transitions.push_back(
                {t[0].get<int>(), t[1].get<std::string>(), t[2].get<int>()});
        }
        a.validate();
        return a;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed automaton: ") + e.what());
    }
}

// ---- transducer ----

json transducer_to_json(const LabelledTransducer& t) {
    json j;
    j["X"] = t.X.symbols();
    j["Sigma"] = t.Sigma.symbols();
    j["states"] = t.n_states;
    j["initial"] = t.initial;
    json fin = json::object();
    for (int f : t.final) {
        json labels = json::array();
        if (auto it = t.labels.find(f); it != t.labels.end())
            for (const Symbol& a : it->second)
                labels.push_back(a);
        fin[std::to_string(f)] = labels;
    }
    j["final"] = fin;
    json edges = json::array();
    for (const auto& e : t.edges)
        edges.push_back(json::array(
            {e.from, words_json(t.X, e.in), words_json(t.X, e.out), e.to}));
    j["edges"] = edges;
    return j;
}

LabelledTransducer transducer_from_json(const json& j) {
    try {
        LabelledTransducer t;
        t.X = SymbolAlphabet(symbol_list(j.at("X"), "X"));
        t.Sigma = SymbolAlphabet(symbol_list(j.at("Sigma"), "Sigma"));
        t.n_states = j.at("states").get<int>();
        t.initial = j.at("initial").get<std::vector<int>>();
        for (const auto& [key, labels] : j.at("final").items()) {
            int f = std::stoi(key);
            t.final.push_back(f);
            for (const auto& l : labels)
                t.labels[f].insert(l.get<std::string>());
        }
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 4)
                throw ValidationError("json: edge must be [p, in, out, q]");
            t.edges.push_back({e[0].get<int>(), t.X.parse_word(e[1].get<std::string>()),
                               t.X.parse_word(e[2].get<std::string>()), e[3].get<int>()});
        }
        t.validate();
        return t;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed transducer: ") + e.what());
    }
}

// ---- hypergraph ----

json graph_to_json(const Hypergraph& g) {
    json j;
    j["vertices"] = std::vector<Vertex>(g.vertices.begin(), g.vertices.end());
    json arcs = json::array(), colours = json::array(), hyper = json::array();
    for (const auto& h : g.arcs) {
        if (h.verts.size() == 2)
            arcs.push_back(json::array({h.verts[0], h.label, h.verts[1]}));
        else if (h.verts.size() == 1)
            colours.push_back(json::array({h.label, h.verts[0]}));
        else {
            json row = json::array({h.label});
            for (const Vertex& v : h.verts) row.push_back(v);
            hyper.push_back(row);
        }
    }
    j["arcs"] = arcs;
    j["colours"] = colours;
    if (!hyper.empty()) j["hyperarcs"] = hyper;
    return j;
}

Hypergraph graph_from_json(const json& j) {
    try {
        Hypergraph g;
        if (j.contains("vertices"))
            for (const auto& v : j.at("vertices"))
                g.vertices.insert(v.get<std::string>());
        if (j.contains("arcs"))
            for (const auto& a : j.at("arcs")) {
                if (!a.is_array() || a.size() != 3)
                    throw ValidationError("json: arc must be [src, label, dst]");
                g.add_arc(a[0].get<std::string>(), a[1].get<std::string>(),
                          a[2].get<std::string>());
            }
        if (j.contains("colours"))
            for (const auto& c : j.at("colours")) {
                if (!c.is_array() || c.size() != 2)
                    throw ValidationError("json: colour must be [label, vertex]");
                g.add_colour(c[0].get<std::string>(), c[1].get<std::string>());
            }
        if (j.contains("hyperarcs"))
            for (const auto& h : j.at("hyperarcs")) {
                if (!h.is_array() || h.size() < 2)
                    throw ValidationError("json: hyperarc must be [label, v1, ...]");
                Hyperarc arc{h[0].get<std::string>(), {}};
                for (std::size_t i = 1; i < h.size(); ++i)
                    arc.verts.push_back(h[i].get<std::string>());
                g.add(std::move(arc));
            }
        return g;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed graph: ") + e.what());
    }
}

// ---- presentations ----

json rational_to_json(const RationalGraphPresentation& p) {
    json j;
    j["type"] = "rational";
    j["transducer"] = transducer_to_json(p.t);
    j["restriction"] = p.vertexRestriction ? automaton_to_json(*p.vertexRestriction)
                                           : json(nullptr);
    return j;
}

RationalGraphPresentation rational_from_json(const json& j) {
    RationalGraphPresentation p;
    p.t = transducer_from_json(j.at("transducer"));
    if (j.contains("restriction") && !j.at("restriction").is_null()) {
        const json& r = j.at("restriction");
        if (r.is_string())
            p.vertexRestriction = compile(r.get<std::string>(), p.t.X);
        else
            p.vertexRestriction = automaton_from_json(r);
    }
    return p;
}

json prefrec_to_json(const PrefixRecPresentation& p) {
    // phi and restriction round-trip as automata, not regexes; the
    // regex form is accepted on input only.
    json j;
    j["type"] = "prefrec";
    j["directions"] = p.directions.symbols();
    j["Sigma"] = p.Sigma.symbols();
    json phi = json::object();
    for (const auto& [a, nfa] : p.phi)
        phi[a] = automaton_to_json(nfa);
    j["phi"] = phi;
    j["restriction"] = automaton_to_json(p.restriction);
    return j;
}

PrefixRecPresentation prefrec_from_json(const json& j) {
    try {
        PrefixRecPresentation p;
        p.directions = SymbolAlphabet(symbol_list(j.at("directions"), "directions"));
        SymbolAlphabet barred = barred_alphabet(p.directions);
        std::vector<Symbol> sigma;
        if (j.contains("Sigma"))
            sigma = symbol_list(j.at("Sigma"), "Sigma");
        else
            for (const auto& [a, r] : j.at("phi").items())
                sigma.push_back(a);
        p.Sigma = SymbolAlphabet(sigma);
        for (const auto& [a, r] : j.at("phi").items())
            p.phi[a] = r.is_string() ? compile(r.get<std::string>(), barred)
                                     : automaton_from_json(r);
        if (j.contains("restriction") && !j.at("restriction").is_null()) {
            const json& r = j.at("restriction");
            p.restriction = r.is_string() ? compile(r.get<std::string>(), p.directions)
                                          : automaton_from_json(r);
        } else {
            p.restriction = universal_automaton(p.directions);
        }
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed prefrec presentation: ") +
                              e.what());
    }
}

static json arity_map_json(const std::map<Symbol, int>& m) {
    json j = json::object();
    for (const auto& [s, a] : m) j[s] = a;
    return j;
}

static std::map<Symbol, int> arity_map(const json& j, const char* what) {
    std::map<Symbol, int> m;
    if (j.is_array()) {
        // bare list: binary symbols
        for (const auto& s : j) m[s.get<std::string>()] = 2;
    } else if (j.is_object()) {
        for (const auto& [s, a] : j.items()) m[s] = a.get<int>();
    } else {
        throw ValidationError(std::string("json: ") + what +
                              " must be an object {symbol: arity} or a list");
    }
    return m;
}

json hr_to_json(const HRGrammar& g) {
    json j;
    j["type"] = "hr";
    j["nonterminals"] = arity_map_json(g.nonterminals);
    j["terminals"] = arity_map_json(g.terminals);
    j["axiom"] = graph_to_json(g.axiom);
    json rules = json::object();
    for (const auto& [nt, r] : g.rules) {
        json jr;
        jr["formal"] = r.formals;
        jr["rhs"] = graph_to_json(r.rhs);
        rules[nt] = jr;
    }
    j["rules"] = rules;
    return j;
}

HRGrammar hr_from_json(const json& j) {
    try {
        HRGrammar g;
        g.nonterminals = arity_map(j.at("nonterminals"), "nonterminals");
        g.terminals = arity_map(j.at("terminals"), "terminals");
        g.axiom = graph_from_json(j.at("axiom"));
        for (const auto& [nt, jr] : j.at("rules").items()) {
            HRRule r;
            r.formals = jr.at("formal").get<std::vector<Vertex>>();
            r.rhs = graph_from_json(jr.at("rhs"));
            g.rules[nt] = std::move(r);
        }
        return g;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed hr grammar: ") + e.what());
    }
}

json chr_to_json(const CHRGrammar& g) {
    json j;
    j["type"] = "chr";
    j["contextual"] = arity_map_json(g.contextual);
    j["nonterminals"] = arity_map_json(g.nonterminals);
    j["terminals"] = arity_map_json(g.terminals);
    if (const auto* hg = std::get_if<Hypergraph>(&g.axiom)) {
        j["axiom"] = graph_to_json(*hg);
    } else if (const auto* ta = std::get_if<TreeAxiom>(&g.axiom)) {
        json t;
        t["tree"] = json{{"directions", ta->directions.symbols()},
                         {"nonterminal", ta->rootNonTerminal},
                         {"arity", ta->arity}};
        j["axiom"] = t;
    } else {
        const HRAxiom& ha = std::get<HRAxiom>(g.axiom);
        json t;
        t["hr"] = hr_to_json(ha.grammar);
        json placement = json::array({ha.placement.label});
        for (const Vertex& v : ha.placement.verts) placement.push_back(v);
        t["nonterminal"] = placement;
        j["axiom"] = t;
    }
    json rules = json::array();
    for (const auto& r : g.rules) {
        json jr;
        jr["context"] = graph_to_json(r.context);
        json formal = json::array({r.formal.label});
        for (const Vertex& v : r.formal.verts) formal.push_back(v);
        jr["formal"] = formal;
        jr["rhs"] = graph_to_json(r.rhs);
        rules.push_back(jr);
    }
    j["rules"] = rules;
    return j;
}

CHRGrammar chr_from_json(const json& j) {
    try {
        CHRGrammar g;
        if (j.contains("contextual"))
            g.contextual = arity_map(j.at("contextual"), "contextual");
        g.nonterminals = arity_map(j.at("nonterminals"), "nonterminals");
        g.terminals = arity_map(j.at("terminals"), "terminals");
        const json& ax = j.at("axiom");
        if (ax.contains("tree")) {
            const json& t = ax.at("tree");
            TreeAxiom ta;
            ta.directions = SymbolAlphabet(symbol_list(t.at("directions"), "directions"));
            ta.rootNonTerminal = t.at("nonterminal").get<std::string>();
            if (t.contains("arity")) ta.arity = t.at("arity").get<int>();
            g.axiom = ta;
        } else if (ax.contains("hr")) {
            HRAxiom ha;
            ha.grammar = hr_from_json(ax.at("hr"));
            const json& pl = ax.at("nonterminal");
            ha.placement.label = pl.at(0).get<std::string>();
            for (std::size_t i = 1; i < pl.size(); ++i)
                ha.placement.verts.push_back(pl[i].get<std::string>());
            g.axiom = ha;
        } else {
            g.axiom = graph_from_json(ax);
        }
        auto read_hyperarc = [](const json& f) {
            Hyperarc h;
            h.label = f.at(0).get<std::string>();
            for (std::size_t i = 1; i < f.size(); ++i)
                h.verts.push_back(f[i].get<std::string>());
            return h;
        };
        for (const auto& jr : j.at("rules")) {
            ContextualRule r;
            if (jr.contains("context")) r.context = graph_from_json(jr.at("context"));
            r.formal = read_hyperarc(jr.at("formal"));
            r.rhs = graph_from_json(jr.at("rhs"));
            g.rules.push_back(std::move(r));
        }
        g.validate();
        return g;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("json: malformed chr grammar: ") + e.what());
    }
}

Presentation presentation_from_json(const json& j) {
    std::string type;
    try {
        type = j.at("type").get<std::string>();
    } catch (const json::exception&) {
        throw ValidationError("json: presentation needs a \"type\" tag");
    }
    if (type == "rational") return rational_from_json(j);
    if (type == "prefrec") return prefrec_from_json(j);
    if (type == "hr") return hr_from_json(j);
    if (type == "chr") return chr_from_json(j);
    throw ValidationError("json: unknown presentation type '" + type + "'");
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("json: parse error in '" + path + "': " + e.what());
    }
    return presentation_from_json(j);
}

json presentation_to_json(const Presentation& p) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RationalGraphPresentation>)
                return rational_to_json(v);
            else if constexpr (std::is_same_v<T, PrefixRecPresentation>)
                return prefrec_to_json(v);
            else if constexpr (std::is_same_v<T, HRGrammar>)
                return hr_to_json(v);
            else
                return chr_to_json(v);
        },
        p);
}

}  // namespace infgraph
