// infgraph -- command-line front end for the presentation library.
//
// Exit codes: 0 answered, 1 negative verdict on test verbs (arc, trace,
// pcp, iso), 2 validation or usage error.
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "infgraph/json_io.hpp"

using namespace infgraph;

namespace {

int g_exit = 0;
bool g_json = false;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("json: parse error in '" + path + "': " + e.what());
    }
    return j;
}

Graph load_graph_file(const std::string& path) { return graph_from_json(load_json_file(path)); }

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void emit_graph(const Graph& g, bool dot) {
    if (dot)
        std::cout << to_dot(g);
    else if (g_json)
        std::cout << graph_to_json(g).dump(2) << "\n";
    else {
        for (const auto& a : g.arcs) {
            if (a.verts.size() == 2)
                std::cout << (a.verts[0].empty() ? "()" : a.verts[0]) << " -" << a.label
                          << "-> " << (a.verts[1].empty() ? "()" : a.verts[1]) << "\n";
            else if (a.verts.size() == 1)
                std::cout << a.label << "(" << a.verts[0] << ")\n";
        }
    }
}

void emit_words(const std::vector<Word>& words, bool truncated) {
    if (g_json) {
        json j;
        json arr = json::array();
        for (const Word& w : words)
            arr.push_back(word_to_string(w));
        j["words"] = arr;
        j["truncated"] = truncated;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Word& w : words)
            std::cout << (w.empty() ? "()" : word_to_string(w)) << "\n";
    }
    if (truncated)
        std::cerr << "warning: word list truncated at the enumeration cap\n";
}

void emit_verdict(const char* what, bool yes) {
    if (g_json)
        std::cout << json{{what, yes}}.dump() << "\n";
    else
        std::cout << (yes ? std::string(what) : "no " + std::string(what)) << "\n";
    if (!yes) g_exit = 1;
}

// In word positions "()" doubles for the empty word so shells need no
// empty-string quoting.
Word parse_vertex(const SymbolAlphabet& alpha, const std::string& s) {
    if (s == "()") return {};
    return alpha.parse_word(s);
}

const SymbolAlphabet& vertex_alphabet(const Presentation& p) {
    if (const auto* r = std::get_if<RationalGraphPresentation>(&p)) return r->t.X;
    if (const auto* q = std::get_if<PrefixRecPresentation>(&p)) return q->directions;
    throw ValidationError("this verb needs a rational or prefrec presentation");
}

PCPInstance parse_pcp(const std::string& pairs) {
    PCPInstance inst;
    std::size_t pos = 0;
    while (pos <= pairs.size()) {
        std::size_t comma = pairs.find(',', pos);
        std::string item = pairs.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ValidationError("pcp: pair '" + item + "' is not of the form u:v");
        inst.pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    inst.validate();
    return inst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"queries over finitely presented infinite graphs"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "machine-readable output");
    app.failure_message([](const CLI::App* a, const CLI::Error& e) {
        g_exit = 2;
        return CLI::FailureMessage::help(a, e);
    });

    std::string file, file2, outFile, sym, word, u, v, root, re1, re2, mapFile, pairs;
    std::string source = "src", colour = "reach";
    int maxLen = 3, level = 3, depth = 3, steps = 8, axiomDepth = 4;
    std::size_t cap = kDefaultSuccessorCap;
    bool dot = false, serial = false, symmetric = false, full = false;

    auto* cValidate = app.add_subcommand("validate", "check a presentation file");
    cValidate->add_option("file", file)->required();

    auto* cArc = app.add_subcommand("arc", "test one arc u -a-> v");
    cArc->add_option("file", file)->required();
    cArc->add_option("u", u)->required();
    cArc->add_option("label", sym)->required();
    cArc->add_option("v", v)->required();

    auto* cSucc = app.add_subcommand("successors", "targets of a-arcs out of u");
    auto* cPred = app.add_subcommand("predecessors", "sources of a-arcs into v");
    for (auto* c : {cSucc, cPred}) {
        c->add_option("file", file)->required();
        c->add_option("vertex", u)->required();
        c->add_option("label", sym)->required();
        c->add_option("--max-len", maxLen, "word length bound")->capture_default_str();
        c->add_option("--cap", cap, "enumeration cap")->capture_default_str();
    }

    auto* cView = app.add_subcommand("view", "explicit graph on short vertices");
    cView->add_option("file", file)->required();
    cView->add_option("--max-len", maxLen, "vertex length bound")->capture_default_str();
    cView->add_flag("--dot", dot, "DOT output");
    cView->add_flag("--serial", serial, "single-threaded reference kernel");

    auto* cTrace = app.add_subcommand("trace", "path-language membership");
    cTrace->add_option("file", file)->required();
    cTrace->add_option("--initial", re1, "regex over X for start vertices")->required();
    cTrace->add_option("--final", re2, "regex over X for end vertices")->required();
    cTrace->add_option("--word", word, "label word to test")->required();

    auto* cSample = app.add_subcommand("sample", "short words of the path language");
    cSample->add_option("file", file)->required();
    cSample->add_option("--initial", re1)->required();
    cSample->add_option("--final", re2)->required();
    cSample->add_option("--max-len", maxLen, "trace length bound")->capture_default_str();

    auto* cCompose = app.add_subcommand("compose", "composition of two rational graphs");
    cCompose->add_option("file1", file)->required();
    cCompose->add_option("file2", file2)->required();
    cCompose->add_option("-o,--out", outFile, "output presentation file")->required();

    auto* cInvsub = app.add_subcommand("invsub", "inverse finite substitution");
    cInvsub->add_option("file", file)->required();
    cInvsub->add_option("--map", mapFile, "json {label: [words over Sigma +- bars]}")
        ->required();
    cInvsub->add_option("-o,--out", outFile)->required();

    auto* cPaths = app.add_subcommand("simple-paths", "edge-id words of simple accepting paths");
    cPaths->add_option("file", file)->required();
    cPaths->add_option("label", sym)->required();

    auto* cGen = app.add_subcommand("generate", "level-n graph of an hr grammar");
    cGen->add_option("file", file)->required();
    cGen->add_option("--level", level)->capture_default_str();
    cGen->add_flag("--dot", dot);

    auto* cAccess = app.add_subcommand("colour-access", "colour reachable vertices");
    cAccess->add_option("file", file)->required();
    cAccess->add_option("--source", source, "source colour")->capture_default_str();
    cAccess->add_option("--colour", colour, "colour to add")->capture_default_str();
    cAccess->add_flag("--symmetric", symmetric, "undirected reachability");
    cAccess->add_option("-o,--out", outFile)->required();

    auto* cRestrict = app.add_subcommand("colour-restrict", "induced subgraph on a colour");
    cRestrict->add_option("file", file)->required();
    cRestrict->add_option("--colour", colour)->capture_default_str();
    cRestrict->add_option("-o,--out", outFile)->required();

    auto* cChrGen = app.add_subcommand("chr-generate", "contextual derivation");
    cChrGen->add_option("file", file)->required();
    cChrGen->add_option("--steps", steps)->capture_default_str();
    cChrGen->add_option("--axiom-depth", axiomDepth)->capture_default_str();
    cChrGen->add_flag("--dot", dot);
    cChrGen->add_flag("--full", full, "include non-terminal and contextual arcs");

    auto* cFromRat = app.add_subcommand("from-rational", "rational -> contextual grammar");
    cFromRat->add_option("file", file)->required();
    cFromRat->add_option("-o,--out", outFile)->required();

    auto* cToRat = app.add_subcommand("to-rational", "tree-separated grammar -> rational");
    cToRat->add_option("file", file)->required();
    cToRat->add_option("-o,--out", outFile)->required();

    auto* cPcp = app.add_subcommand("pcp", "correspondence-instance encoding");
    cPcp->add_option("--pairs", pairs, "instance, e.g. ab:a,b:bb")->required();
    cPcp->add_option("--steps", steps, "derivation bound")->default_val(12);
    cPcp->add_option("--axiom-depth", axiomDepth)->capture_default_str();
    cPcp->add_option("-o,--out", outFile, "write the encoding grammar");

    auto* cUnfold = app.add_subcommand("unfold", "path tree of an explicit graph");
    cUnfold->add_option("file", file, "graph json")->required();
    cUnfold->add_option("root", root)->required();
    cUnfold->add_option("--depth", depth)->capture_default_str();
    cUnfold->add_flag("--dot", dot);

    auto* cIso = app.add_subcommand("iso", "isomorphism of two explicit graphs");
    cIso->add_option("file1", file)->required();
    cIso->add_option("file2", file2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (*cValidate) {
            Presentation p = load_presentation(file);
            if (const auto* hr = std::get_if<HRGrammar>(&p)) {
                ValidationReport rep = validate(*hr);
                if (!rep.ok()) {
                    for (const auto& issue : rep.issues)
                        std::cerr << issue << "\n";
                    return 2;
                }
            } else if (const auto* r = std::get_if<RationalGraphPresentation>(&p)) {
                LabelledTransducer t = r->t;
                t.validate();
            } else if (const auto* q = std::get_if<PrefixRecPresentation>(&p)) {
                q->validate();
            } else {
                std::get<CHRGrammar>(p).validate();
            }
            std::cout << (g_json ? "{\"valid\":true}" : "valid") << "\n";
        } else if (*cArc) {
            Presentation p = load_presentation(file);
            const SymbolAlphabet& X = vertex_alphabet(p);
            Word wu = parse_vertex(X, u), wv = parse_vertex(X, v);
            bool yes = std::holds_alternative<RationalGraphPresentation>(p)
                           ? arc_exists(std::get<RationalGraphPresentation>(p), wu, sym, wv)
                           : arc_exists(std::get<PrefixRecPresentation>(p), wu, sym, wv);
            emit_verdict("arc", yes);
        } else if (*cSucc || *cPred) {
            Presentation p = load_presentation(file);
            const SymbolAlphabet& X = vertex_alphabet(p);
            Word wu = parse_vertex(X, u);
            if (const auto* r = std::get_if<RationalGraphPresentation>(&p)) {
                WordList l = (*cSucc) ? successors(*r, wu, sym, maxLen, cap)
                                      : predecessors(*r, wu, sym, maxLen, cap);
                emit_words(l.words, l.truncated);
            } else {
                const auto& q = std::get<PrefixRecPresentation>(p);
                if (*cPred)
                    throw ValidationError(
                        "predecessors on prefrec presentations: query the converse "
                        "presentation instead");
                PrefWordList l = pr_successors(q, wu, sym, maxLen, cap);
                emit_words(l.words, l.truncated);
            }
        } else if (*cView) {
            Presentation p = load_presentation(file);
            Graph g = std::holds_alternative<RationalGraphPresentation>(p)
                          ? bounded_view(std::get<RationalGraphPresentation>(p), maxLen,
                                         !serial)
                          : bounded_view(std::get<PrefixRecPresentation>(p), maxLen, !serial);
            emit_graph(g, dot);
        } else if (*cTrace) {
            auto p = std::get<RationalGraphPresentation>(load_presentation(file));
            TraceQuery q;
            q.I = compile(re1, p.t.X);
            q.F = compile(re2, p.t.X);
            q.word = p.t.Sigma.parse_word(word == "()" ? "" : word);
            emit_verdict("accepted", trace_member(p, q));
        } else if (*cSample) {
            auto p = std::get<RationalGraphPresentation>(load_presentation(file));
            auto words = trace_language_sample(p, compile(re1, p.t.X), compile(re2, p.t.X),
                                               maxLen);
            emit_words(words, false);
        } else if (*cCompose) {
            auto p1 = std::get<RationalGraphPresentation>(load_presentation(file));
            auto p2 = std::get<RationalGraphPresentation>(load_presentation(file2));
            write_json_file(outFile, rational_to_json(compose_graphs(p1, p2)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cInvsub) {
            auto p = std::get<RationalGraphPresentation>(load_presentation(file));
            json jm = load_json_file(mapFile);
            SymbolAlphabet barred = barred_alphabet(p.t.Sigma);
            std::map<Symbol, std::vector<Word>> phi;
            for (const auto& [d, wordsJ] : jm.items())
                for (const auto& w : wordsJ)
                    phi[d].push_back(barred.parse_word(w.get<std::string>()));
            write_json_file(outFile, rational_to_json(inverse_finite_substitution(p, phi)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cPaths) {
            auto p = std::get<RationalGraphPresentation>(load_presentation(file));
            auto paths = simple_paths_substitution(p.t, sym);
            if (g_json) {
                json arr = json::array();
                for (const auto& sp : paths)
                    arr.push_back(sp.edge_ids);
                std::cout << arr.dump() << "\n";
            } else {
                for (const auto& sp : paths) {
                    for (std::size_t i = 0; i < sp.edge_ids.size(); ++i)
                        std::cout << (i ? "." : "") << "e" << sp.edge_ids[i];
                    std::cout << (sp.edge_ids.empty() ? "()" : "") << "\n";
                }
            }
        } else if (*cGen) {
            auto g = std::get<HRGrammar>(load_presentation(file));
            ValidationReport rep = validate(g);
            if (!rep.ok())
                throw ValidationError("invalid grammar: " + rep.issues.front());
            emit_graph(generate(g, level), dot);
        } else if (*cAccess) {
            auto g = std::get<HRGrammar>(load_presentation(file));
            write_json_file(outFile,
                            hr_to_json(accessible_colouring(g, source, colour, symmetric)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cRestrict) {
            auto g = std::get<HRGrammar>(load_presentation(file));
            write_json_file(outFile, hr_to_json(colour_restriction(g, colour)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cChrGen) {
            auto g = std::get<CHRGrammar>(load_presentation(file));
            CHRGenResult res = chr_generate(g, steps, axiomDepth);
            emit_graph(full ? res.full : res.graph, dot);
            if (res.frontierTruncated)
                std::cerr << "warning: derivation touched the axiom frontier; increase "
                             "--axiom-depth for exact results\n";
        } else if (*cFromRat) {
            auto p = std::get<RationalGraphPresentation>(load_presentation(file));
            p.t = normalize_edges(p.t);
            write_json_file(outFile, chr_to_json(from_rational(p)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cToRat) {
            auto g = std::get<CHRGrammar>(load_presentation(file));
            write_json_file(outFile, rational_to_json(to_rational(g)));
            std::cout << "wrote " << outFile << "\n";
        } else if (*cPcp) {
            PCPInstance inst = parse_pcp(pairs);
            CHRGrammar g = pcp_encode(inst);
            if (!outFile.empty()) {
                write_json_file(outFile, chr_to_json(g));
                std::cerr << "wrote " << outFile << "\n";
            }
            CHRGenResult res = chr_generate(g, steps, axiomDepth);
            bool solved = res.graph.arcs.count({"#", {"0", "1"}}) > 0;
            if (g_json)
                std::cout << json{{"solution_found", solved}, {"steps", steps}}.dump()
                          << "\n";
            else
                std::cout << (solved ? "solution found within " + std::to_string(steps) +
                                           " steps"
                                     : "no solution within " + std::to_string(steps) +
                                           " steps")
                          << "\n";
            if (!solved) g_exit = 1;
        } else if (*cUnfold) {
            Graph g = load_graph_file(file);
            emit_graph(unfold(g, root, depth), dot);
        } else if (*cIso) {
            Graph g1 = load_graph_file(file);
            Graph g2 = load_graph_file(file2);
            IsoResult r = isomorphic(g1, g2);
            if (g_json) {
                json j{{"isomorphic", r.found}};
                if (r.found) j["witness"] = r.witness;
                std::cout << j.dump(2) << "\n";
            } else if (r.found) {
                std::cout << "isomorphic\n";
                for (const auto& [a, b] : r.witness)
                    std::cout << "  " << a << " ~ " << b << "\n";
            } else {
                std::cout << "not isomorphic\n";
            }
            if (!r.found) g_exit = 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::bad_variant_access&) {
        std::cerr << "error: presentation type does not support this verb\n";
        return 2;
    }
    return g_exit;
}
