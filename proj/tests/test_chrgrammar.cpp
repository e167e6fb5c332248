#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "infgraph/chrgrammar.hpp"

using namespace infgraph;

// Minimal contextual system: N walks down an a-chain, leaving b-arcs.
static CHRGrammar walker() {
    CHRGrammar g;
    g.contextual = {{"a", 2}};
    g.terminals = {{"b", 2}};
    g.nonterminals = {{"N", 1}};
    Hypergraph ax;
    ax.add_arc("c0", "a", "c1");
    ax.add_arc("c1", "a", "c2");
    ax.add_arc("c2", "a", "c3");
    ax.add({"N", {"c0"}});
    g.axiom = ax;
    ContextualRule r;
    r.formal = {"N", {"x"}};
    r.context.add_arc("x", "a", "y");
    r.rhs.add_arc("x", "b", "y");
    r.rhs.add({"N", {"y"}});
    g.rules.push_back(r);
    return g;
}

TEST_CASE("validation") {
    CHRGrammar g = walker();
    CHECK_NOTHROW(g.validate());

    CHRGrammar clash = g;
    clash.terminals["a"] = 2;  // both contextual and terminal
    CHECK_THROWS_AS(clash.validate(), ValidationError);

    CHRGrammar disconnected = g;
    disconnected.rules[0].context.add_arc("z1", "a", "z2");  // floats free
    CHECK_THROWS_AS(disconnected.validate(), ValidationError);

    CHRGrammar badFormal = g;
    badFormal.rules[0].formal = {"b", {"x"}};
    CHECK_THROWS_AS(badFormal.validate(), ValidationError);
}

TEST_CASE("context matching") {
    CHRGrammar g = walker();
    CHRState s = chr_initial(g, 0);
    Hyperarc occ{"N", {"c0"}};
    auto ms = find_matches(s.current, g.rules[0], occ);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].at("x") == "c0");
    CHECK(ms[0].at("y") == "c1");

    // at the end of the chain there is no a-successor
    Hyperarc end{"N", {"c3"}};
    CHECK(find_matches(s.current, g.rules[0], end).empty());

    // frontier flag: failing probe at a frontier vertex is reported
    std::set<Vertex> frontier = {"c3"};
    bool touched = false;
    find_matches(s.current, g.rules[0], end, &frontier, &touched);
    CHECK(touched);
}

TEST_CASE("walker derivation") {
    CHRGrammar g = walker();
    CHRGenResult res = chr_generate(g, 5, 0);
    std::set<Hyperarc> want = {{"b", {"c0", "c1"}}, {"b", {"c1", "c2"}}, {"b", {"c2", "c3"}}};
    CHECK(res.graph.arcs == want);
    CHECK_FALSE(res.frontierTruncated);
    // the walker is parked at the chain end, still present in full form
    CHECK(res.full.arcs.count({"N", {"c3"}}) == 1);
}

TEST_CASE("parallel steps rewrite every active occurrence at once") {
    CHRGrammar g = walker();
    Hypergraph ax = std::get<Hypergraph>(g.axiom);
    ax.add({"N", {"c1"}});  // second walker
    g.axiom = ax;
    CHRState s = chr_initial(g, 0);
    CHRState s1 = chr_parallel_step(g, s);
    CHECK(s1.current.arcs.count({"b", {"c0", "c1"}}) == 1);
    CHECK(s1.current.arcs.count({"b", {"c1", "c2"}}) == 1);
    CHECK(s1.level == 1);
}

TEST_CASE("tree axiom materialization") {
    CHRGrammar g;
    g.contextual = {{"0", 2}, {"1", 2}};
    g.terminals = {{"t", 2}};
    g.nonterminals = {{"S", 2}};
    g.axiom = TreeAxiom{SymbolAlphabet({"0", "1"}), "S", 2};
    g.rules.push_back({{}, {"S", {"x1", "x2"}}, {}});

    CHRState s = chr_initial(g, 3);
    CHECK(s.current.vertices.size() == 15);  // complete binary tree, depth 3
    CHECK(s.current.arcs.count({"S", {"", ""}}) == 1);
    CHECK(s.current.arcs.count({"0", {"", "0"}}) == 1);
    CHECK(s.current.arcs.count({"1", {"01", "011"}}) == 1);
    CHECK(s.frontier.size() == 8);
    CHECK(s.frontier.count("000") == 1);
}

TEST_CASE("hr axiom skeleton") {
    HRAxiom ha;
    ha.grammar = fixtures::triangle();
    ha.placement = {"S", {"v1", "v2"}};
    CHRGrammar g;
    g.contextual = {{"a", 2}, {"b", 2}, {"c", 2}};
    g.terminals = {{"t", 2}};
    g.nonterminals = {{"S", 2}};
    g.axiom = ha;
    g.rules.push_back({{}, {"S", {"x1", "x2"}}, {}});

    CHRState s = chr_initial(g, 3);
    // the depth-3 triangle skeleton: 3(2^3 - 1) contextual arcs + the marker
    long ctx = 0;
    for (const auto& arc : s.current.arcs)
        if (arc.label != "S") ++ctx;
    CHECK(ctx == 21);
    CHECK(!s.frontier.empty());
}

TEST_CASE("nondeterministic context match is rejected") {
    CHRGrammar g = walker();
    Hypergraph ax = std::get<Hypergraph>(g.axiom);
    ax.add_arc("c0", "a", "alt");  // two a-successors of c0
    g.axiom = ax;
    CHECK_THROWS_AS(chr_generate(g, 1, 0), ValidationError);
}

TEST_CASE("rational encoding reproduces the bounded view") {
    auto p = fixtures::counting_graph();
    CHRGrammar g = from_rational(p);
    CHECK_NOTHROW(g.validate());
    CHRGenResult res = chr_generate(g, 9, 4);
    Graph view = bounded_view(p, 3);

    std::set<Hyperarc> got;
    for (const auto& a : res.graph.binary_arcs()) {
        // keep arcs whose endpoints decode to words of length <= 3
        auto len = [&](const Vertex& v) { return p.X().parse_word(v).size(); };
        if (len(a.verts[0]) <= 3 && len(a.verts[1]) <= 3)
            got.insert(a);
    }
    auto want_ba = view.binary_arcs();
std::set<Hyperarc> want(want_ba.begin(), want_ba.end());
    CHECK(got == want);
}

TEST_CASE("rational encoding honours the vertex restriction") {
    auto p = fixtures::counting_graph();
    p.vertexRestriction = compile("0*", p.X());
    CHRGrammar g = from_rational(p);
    CHRGenResult res = chr_generate(g, 9, 4);
    for (const auto& a : res.graph.binary_arcs()) {
        CHECK(a.label == "a");
        CHECK(a.verts[0].find('1') == std::string::npos);
    }
}

TEST_CASE("round trip back to a transducer") {
    auto p = fixtures::counting_graph();
    CHRGrammar g = from_rational(p);
    CHECK(is_tree_separated(g));
    RationalGraphPresentation q = to_rational(g);
    Graph v1 = bounded_view(p, 3);
    Graph v2 = bounded_view(q, 3);
    CHECK(v1.arcs == v2.arcs);
}

TEST_CASE("tree separation rejects cross-linked contexts") {
    CHRGrammar g = walker();  // explicit axiom with several non-terminals is fine,
    // but a context arc between the two formal-rooted trees is not
    CHRGrammar bad;
    bad.contextual = {{"d", 2}};
    bad.terminals = {{"t", 2}};
    bad.nonterminals = {{"S", 2}};
    bad.axiom = TreeAxiom{SymbolAlphabet({"d"}), "S", 2};
    ContextualRule r;
    r.formal = {"S", {"x1", "x2"}};
    r.context.add_arc("x1", "d", "x2");  // links the two roots
    r.rhs.add_arc("x1", "t", "x2");
    bad.rules.push_back(r);
    CHECK_FALSE(is_tree_separated(bad));
    CHECK_THROWS_AS(to_rational(bad), ValidationError);
}

TEST_CASE("random transducers survive the encoding round trip") {
    fixtures::Rng rng(13001);
    for (int inst = 0; inst < 15; ++inst) {
        RationalGraphPresentation p;
        p.t = fixtures::random_transducer(rng, 3, 1, false);
        CHRGrammar g = from_rational(p);
        CHRGenResult res = chr_generate(g, 8, 4);
        Graph view = bounded_view(p, 3);
        std::set<Hyperarc> got;
        for (const auto& a : res.graph.binary_arcs())
            if (a.verts[0].size() <= 3 && a.verts[1].size() <= 3)
                got.insert(a);
        auto want_ba = view.binary_arcs();
std::set<Hyperarc> want(want_ba.begin(), want_ba.end());
        CHECK(got == want);

        RationalGraphPresentation q = to_rational(g);
        CHECK(bounded_view(q, 3).arcs == view.arcs);
    }
}

TEST_CASE("pcp instances") {
    PCPInstance good{{{"ab", "a"}, {"b", "bb"}}};
    CHECK_NOTHROW(good.validate());
    CHECK(pcp_solvable(good, 6));

    PCPInstance bad{{{"ab", "ba"}}};
    CHECK_FALSE(pcp_solvable(bad, 6));

    PCPInstance malformed{{{"ax", "a"}}};
    CHECK_THROWS_AS(malformed.validate(), ValidationError);
    CHECK_THROWS_AS(PCPInstance{}.validate(), ValidationError);
}

TEST_CASE("pcp encoding finds the witness arc exactly for solvable instances") {
    PCPInstance good{{{"ab", "a"}, {"b", "bb"}}};
    CHRGrammar g = pcp_encode(good);
    CHECK_NOTHROW(g.validate());
    CHRGenResult res = chr_generate(g, 8, 0);
    CHECK(res.graph.arcs.count({"#", {"0", "1"}}) == 1);

    PCPInstance bad{{{"ab", "ba"}}};
    CHRGenResult res2 = chr_generate(pcp_encode(bad), 12, 0);
    CHECK(res2.graph.arcs.count({"#", {"0", "1"}}) == 0);
}
