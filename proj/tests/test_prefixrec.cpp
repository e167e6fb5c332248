#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "infgraph/prefixrec.hpp"

using namespace infgraph;

static Word rep(const Symbol& s, int n, const Symbol& tail = "") {
    Word w(n, s);
    if (!tail.empty()) w.push_back(tail);
    return w;
}

TEST_CASE("presentation validation") {
    auto p = fixtures::ladder();
    CHECK_NOTHROW(p.validate());

    PrefixRecPresentation bad = p;
    bad.Sigma = SymbolAlphabet({"a", "b", "c", "d"});  // no phi for d
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    PrefixRecPresentation barredRestriction = p;
    SymbolAlphabet barred = barred_alphabet(p.directions);
    barredRestriction.restriction = compile("A~", barred);
    CHECK_THROWS_AS(barredRestriction.validate(), ValidationError);
}

TEST_CASE("ladder arcs") {
    auto p = fixtures::ladder();
    auto w = [&](const char* s) { return p.directions.parse_word(s); };

    CHECK(arc_exists(p, w("BBA"), "c", w("BA")));
    CHECK(arc_exists(p, w("BA"), "c", w("A")));
    CHECK(arc_exists(p, {}, "a", w("A")));
    CHECK(arc_exists(p, w("B"), "b", w("BB")));
    CHECK(arc_exists(p, w("BB"), "a", w("BBA")));
    CHECK_FALSE(arc_exists(p, w("BBA"), "c", w("A")));
    CHECK_FALSE(arc_exists(p, w("A"), "a", w("AA")));  // AA violates the restriction
    CHECK_FALSE(arc_exists(p, w("A"), "b", w("AB")));
    CHECK_THROWS_AS(arc_exists(p, {Symbol("A~")}, "a", {}), ValidationError);

    auto pl = fixtures::ladder(true);
    CHECK(arc_exists(pl, w("BBBA"), "c", w("BA")));
    CHECK(arc_exists(pl, w("BBBA"), "c", w("BBA")));
    CHECK(arc_exists(pl, w("BBA"), "c", w("BA")));
    CHECK_FALSE(arc_exists(pl, w("BA"), "c", w("BBA")));
}

TEST_CASE("ladder closed form on a small window") {
    auto p = fixtures::ladder();
    Graph g = bounded_view(p, 6);
    std::set<Hyperarc> want;
    for (int n = 0; n <= 5; ++n) {
        want.insert({"b", {word_to_string(rep("B", n)), word_to_string(rep("B", n + 1))}});
        want.insert({"a", {word_to_string(rep("B", n)), word_to_string(rep("B", n, "A"))}});
        // the c-arc source B^(n+1)A must itself fit in the window
        if (n + 2 <= 6)
            want.insert(
                {"c", {word_to_string(rep("B", n + 1, "A")), word_to_string(rep("B", n, "A"))}});
    }
    auto got_ba = g.binary_arcs();
std::set<Hyperarc> got(got_ba.begin(), got_ba.end());
    CHECK(got == want);
}

TEST_CASE("successor enumeration") {
    auto p = fixtures::ladder();
    auto w = [&](const char* s) { return p.directions.parse_word(s); };
    PrefWordList s = pr_successors(p, w("BB"), "a", 6);
    REQUIRE(s.words.size() == 1);
    CHECK(s.words[0] == w("BBA"));

    auto pl = fixtures::ladder(true);
    PrefWordList sc = pr_successors(pl, w("BBBBA"), "c", 6);
    std::vector<Word> want = {w("A"), w("BA"), w("BBA"), w("BBBA")};
    CHECK(sc.words == want);
}

TEST_CASE("parallel and serial view kernels agree") {
    auto p = fixtures::ladder();
    CHECK(bounded_view(p, 8, true) == bounded_view(p, 8, false));
    fixtures::Rng rng(11001);
    for (int inst = 0; inst < 10; ++inst) {
        auto q = fixtures::random_prefrec(rng, 3);
        CHECK(bounded_view(q, 3, true) == bounded_view(q, 3, false));
    }
}

TEST_CASE("saturation agrees with configuration search on random instances") {
    fixtures::Rng rng(11002);
    std::vector<Word> words = {{}};
    {
        SymbolAlphabet dirs({"A", "B"});
        for (std::size_t len = 1, begin = 0; len <= 4; ++len) {
            std::size_t end = words.size();
            for (std::size_t i = begin; i < end; ++i)
                for (const Symbol& s : dirs.symbols()) {
                    Word w = words[i];
                    w.push_back(s);
                    words.push_back(std::move(w));
                }
            begin = end;
        }
    }
    for (int inst = 0; inst < 30; ++inst) {
        auto p = fixtures::random_prefrec(rng, 3);
        for (const Word& u : words)
            for (const Word& v : words)
                for (const Symbol& a : p.Sigma.symbols()) {
                    INFO("instance ", inst, " ", word_to_string(u), " -", a, "-> ",
                         word_to_string(v));
                    CHECK(arc_exists(p, u, a, v) == arc_exists_bfs(p, u, a, v, 8));
                }
    }
}

TEST_CASE("post star reachable sets are sound against the tree walk") {
    auto p = fixtures::ladder();
    auto w = [&](const char* s) { return p.directions.parse_word(s); };
    PostStarResult ps = post_star(p, "c", w("BBA"));
    const FiniteAutomaton& nfa = p.phi.at("c");
    bool some = false;
    for (int f : nfa.final) {
        for (const Word& v : enumerate(trim(ps.reach(f)), 6)) {
            some = true;
            CHECK(arc_exists_bfs(p, w("BBA"), "c", v, 10));
        }
    }
    CHECK(some);
}

TEST_CASE("restriction filters endpoints") {
    auto p = fixtures::ladder();
    // B*A only: b-arcs disappear entirely
    p.restriction = compile("B*A", p.directions);
    Graph g = bounded_view(p, 5);
    for (const auto& a : g.binary_arcs())
        CHECK(a.label == "c");
    CHECK(g.arcs.count({"c", {"BBA", "BA"}}) == 1);
}
