#include "infgraph/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>

namespace infgraph {

void FiniteAutomaton::validate() const {
    auto ok = [&](int s) { return s >= 0 && s < n_states; };
    for (int s : initial)
        if (!ok(s)) throw ValidationError("initial state out of range");
    for (int s : final)
        if (!ok(s)) throw ValidationError("final state out of range");
    for (const auto& t : transitions) {
        if (!ok(t.from) || !ok(t.to))
            throw ValidationError("transition endpoint out of range");
        if (!t.label.empty() && !alphabet.contains(t.label))
            throw ValidationError("transition symbol '" + t.label + "' not in alphabet");
    }
}

std::size_t max_states() {
    if (const char* env = std::getenv("INFGRAPH_MAX_STATES")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v >= 1)
            return static_cast<std::size_t>(v);
    }
    return 1000000;
}

static void check_cap(std::size_t n) {
    if (n > max_states())
        throw ValidationError("automaton exceeds INFGRAPH_MAX_STATES (" +
                              std::to_string(max_states()) + " states)");
}

// ---- regex parsing ----

namespace {

using RE = RegularExpression;
using REP = std::shared_ptr<RE>;

REP mk(RE::Kind k, REP l = nullptr, REP r = nullptr) {
    auto e = std::make_shared<RE>();
    e->kind = k;
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
}

struct RegexParser {
    const std::string& text;
    const SymbolAlphabet& alphabet;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
    }
    bool at(char c) {
        skip();
        return pos < text.size() && text[pos] == c;
    }
    bool atom_start() {
        skip();
        if (pos >= text.size()) return false;
        char c = text[pos];
        return c != '+' && c != '*' && c != ')';
    }

    REP parse_union() {
        REP e = parse_concat();
        while (at('+')) {
            ++pos;
            e = mk(RE::Kind::Union, e, parse_concat());
        }
        return e;
    }
    REP parse_concat() {
        REP e = parse_star();
        while (atom_start())
            e = mk(RE::Kind::Concat, e, parse_star());
        return e;
    }
    REP parse_star() {
        REP e = parse_atom();
        while (at('*')) {
            ++pos;
            e = mk(RE::Kind::Star, e);
        }
        return e;
    }
    REP parse_atom() {
        skip();
        if (pos >= text.size())
            throw ValidationError("regex: unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            skip();
            if (pos < text.size() && text[pos] == ')') {  // "()" is epsilon
                ++pos;
                return mk(RE::Kind::Epsilon);
            }
            REP e = parse_union();
            skip();
            if (pos >= text.size() || text[pos] != ')')
                throw ValidationError("regex: missing ')'");
            ++pos;
            return e;
        }
        if (c == '{') {
            ++pos;
            skip();
            if (pos >= text.size() || text[pos] != '}')
                throw ValidationError("regex: '{' must be followed by '}'");
            ++pos;
            return mk(RE::Kind::Empty);
        }
        // Greedy longest symbol match.
        std::size_t best = 0;
        Symbol found;
        for (const Symbol& s : alphabet.symbols())
            if (s.size() > best && text.compare(pos, s.size(), s) == 0) {
                best = s.size();
                found = s;
            }
        if (best == 0)
            throw ValidationError("regex: no alphabet symbol matches at position " +
                                  std::to_string(pos) + " in '" + text + "'");
        pos += best;
        auto e = mk(RE::Kind::Sym);
        e->sym = found;
        return e;
    }
};

}  // namespace

RegularExpression parse_regex(const std::string& text, const SymbolAlphabet& alphabet) {
    RegexParser p{text, alphabet};
    p.skip();
    if (p.pos >= text.size())
        throw ValidationError("regex: empty input (use '()' for epsilon, '{}' for the empty set)");
    REP e = p.parse_union();
    p.skip();
    if (p.pos != text.size())
        throw ValidationError("regex: trailing input at position " + std::to_string(p.pos));
    return *e;
}

bool regex_matches(const RegularExpression& r, const Word& w) {
    switch (r.kind) {
        case RE::Kind::Empty:
            return false;
        case RE::Kind::Epsilon:
            return w.empty();
        case RE::Kind::Sym:
            return w.size() == 1 && w[0] == r.sym;
        case RE::Kind::Union:
            return regex_matches(*r.left, w) || regex_matches(*r.right, w);
        case RE::Kind::Concat:
            for (std::size_t i = 0; i <= w.size(); ++i) {
                Word a(w.begin(), w.begin() + i), b(w.begin() + i, w.end());
                if (regex_matches(*r.left, a) && regex_matches(*r.right, b))
                    return true;
            }
            return false;
        case RE::Kind::Star: {
            if (w.empty()) return true;
            // Split off a non-empty prefix matched by the body.
            for (std::size_t i = 1; i <= w.size(); ++i) {
                Word a(w.begin(), w.begin() + i), b(w.begin() + i, w.end());
                if (regex_matches(*r.left, a) && regex_matches(r, b))
                    return true;
            }
            return false;
        }
    }
    return false;
}

// ---- compile ----

namespace {
// Builds the fragment of r into `a`, returning (entry, exit) states.
std::pair<int, int> thompson(const RegularExpression& r, FiniteAutomaton& a) {
    auto fresh = [&] { return a.n_states++; };
    switch (r.kind) {
        case RE::Kind::Empty: {
            int s = fresh(), t = fresh();
            return {s, t};
        }
        case RE::Kind::Epsilon: {
            int s = fresh();
            return {s, s};
        }
        case RE::Kind::Sym: {
            int s = fresh(), t = fresh();
            a.transitions.push_back({s, r.sym, t});
            return {s, t};
        }
        case RE::Kind::Union: {
            auto [ls, lt] = thompson(*r.left, a);
            auto [rs, rt] = thompson(*r.right, a);
            int s = fresh(), t = fresh();
            a.transitions.push_back({s, "", ls});
            a.transitions.push_back({s, "", rs});
            a.transitions.push_back({lt, "", t});
            a.transitions.push_back({rt, "", t});
            return {s, t};
        }
        case RE::Kind::Concat: {
            auto [ls, lt] = thompson(*r.left, a);
            auto [rs, rt] = thompson(*r.right, a);
            a.transitions.push_back({lt, "", rs});
            return {ls, rt};
        }
        case RE::Kind::Star: {
            auto [ls, lt] = thompson(*r.left, a);
            int s = fresh();
            a.transitions.push_back({s, "", ls});
            a.transitions.push_back({lt, "", s});
            return {s, s};
        }
    }
    throw ValidationError("regex: malformed expression tree");
}
}  // namespace

FiniteAutomaton compile(const RegularExpression& r, const SymbolAlphabet& alphabet) {
    FiniteAutomaton a;
    a.alphabet = alphabet;
    auto [s, t] = thompson(r, a);
    a.initial = {s};
    a.final = {t};
    a.validate();
    return a;
}

FiniteAutomaton compile(const std::string& regex, const SymbolAlphabet& alphabet) {
    return compile(parse_regex(regex, alphabet), alphabet);
}

// ---- algebra ----

namespace {

std::set<int> eps_closure(const FiniteAutomaton& a, std::set<int> states) {
    std::vector<int> stack(states.begin(), states.end());
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions)
            if (t.from == s && t.label.empty() && states.insert(t.to).second)
                stack.push_back(t.to);
    }
    return states;
}

bool any_final(const FiniteAutomaton& a, const std::set<int>& states) {
    return std::any_of(a.final.begin(), a.final.end(),
                       [&](int f) { return states.count(f) > 0; });
}

}  // namespace

FiniteAutomaton determinize(const FiniteAutomaton& a) {
    FiniteAutomaton d;
    d.alphabet = a.alphabet;
    std::map<std::set<int>, int> id;
    std::vector<std::set<int>> worklist;
    auto intern = [&](const std::set<int>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        check_cap(d.n_states + 1);
        int n = d.n_states++;
        id.emplace(s, n);
        worklist.push_back(s);
        if (any_final(a, s)) d.final.push_back(n);
        return n;
    };
    d.initial = {intern(eps_closure(a, {a.initial.begin(), a.initial.end()}))};
    for (std::size_t w = 0; w < worklist.size(); ++w) {
        std::set<int> cur = worklist[w];
        int from = id.at(cur);
        for (const Symbol& sym : a.alphabet.symbols()) {
            std::set<int> next;
            for (const auto& t : a.transitions)
                if (t.label == sym && cur.count(t.from))
                    next.insert(t.to);
            if (next.empty()) continue;
            next = eps_closure(a, std::move(next));
            d.transitions.push_back({from, sym, intern(next)});
        }
    }
    return d;
}

FiniteAutomaton trim(const FiniteAutomaton& a) {
    std::vector<char> fwd(a.n_states, 0), bwd(a.n_states, 0);
    std::vector<int> stack;
    for (int s : a.initial)
        if (!fwd[s]) { fwd[s] = 1; stack.push_back(s); }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions)
            if (t.from == s && !fwd[t.to]) { fwd[t.to] = 1; stack.push_back(t.to); }
    }
    for (int s : a.final)
        if (!bwd[s]) { bwd[s] = 1; stack.push_back(s); }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions)
            if (t.to == s && !bwd[t.from]) { bwd[t.from] = 1; stack.push_back(t.from); }
    }
    std::vector<int> remap(a.n_states, -1);
    FiniteAutomaton r;
    r.alphabet = a.alphabet;
    for (int s = 0; s < a.n_states; ++s)
        if (fwd[s] && bwd[s]) remap[s] = r.n_states++;
    for (int s : a.initial)
        if (remap[s] >= 0) r.initial.push_back(remap[s]);
    for (int s : a.final)
        if (remap[s] >= 0) r.final.push_back(remap[s]);
    for (const auto& t : a.transitions)
        if (remap[t.from] >= 0 && remap[t.to] >= 0)
            r.transitions.push_back({remap[t.from], t.label, remap[t.to]});
    return r;
}

FiniteAutomaton intersect(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    if (!(a.alphabet == b.alphabet))
        throw ValidationError("intersect: alphabet mismatch");
    FiniteAutomaton da = determinize(a), db = determinize(b);
    FiniteAutomaton r;
    r.alphabet = a.alphabet;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> worklist;
    auto dbfinal = [&](int s, const FiniteAutomaton& m) {
        return std::find(m.final.begin(), m.final.end(), s) != m.final.end();
    };
    auto intern = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        check_cap(r.n_states + 1);
        int n = r.n_states++;
        id.emplace(key, n);
        worklist.push_back(key);
        if (dbfinal(x, da) && dbfinal(y, db)) r.final.push_back(n);
        return n;
    };
    if (da.initial.empty() || db.initial.empty())
        return r;
    r.initial = {intern(da.initial[0], db.initial[0])};
    for (std::size_t w = 0; w < worklist.size(); ++w) {
        auto [x, y] = worklist[w];
        int from = id.at({x, y});
        for (const Symbol& sym : r.alphabet.symbols()) {
            int nx = -1, ny = -1;
            for (const auto& t : da.transitions)
                if (t.from == x && t.label == sym) nx = t.to;
            for (const auto& t : db.transitions)
                if (t.from == y && t.label == sym) ny = t.to;
            if (nx >= 0 && ny >= 0)
                r.transitions.push_back({from, sym, intern(nx, ny)});
        }
    }
    return trim(r);
}

FiniteAutomaton unite(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    if (!(a.alphabet == b.alphabet))
        throw ValidationError("union: alphabet mismatch");
    FiniteAutomaton r;
    r.alphabet = a.alphabet;
    check_cap(static_cast<std::size_t>(a.n_states) + b.n_states);
    r.n_states = a.n_states + b.n_states;
    r.initial = a.initial;
    r.final = a.final;
    r.transitions = a.transitions;
    for (int s : b.initial) r.initial.push_back(s + a.n_states);
    for (int s : b.final) r.final.push_back(s + a.n_states);
    for (const auto& t : b.transitions)
        r.transitions.push_back({t.from + a.n_states, t.label, t.to + a.n_states});
    return r;
}

FiniteAutomaton complement(const FiniteAutomaton& a) {
    FiniteAutomaton d = determinize(a);
    check_cap(d.n_states + 1);
    int sink = d.n_states++;
    // Complete, then flip finals.
    for (int s = 0; s < d.n_states; ++s)
        for (const Symbol& sym : d.alphabet.symbols()) {
            bool has = std::any_of(d.transitions.begin(), d.transitions.end(),
                                   [&](const FATransition& t) {
                                       return t.from == s && t.label == sym;
                                   });
            if (!has) d.transitions.push_back({s, sym, sink});
        }
    std::set<int> fin(d.final.begin(), d.final.end());
    d.final.clear();
    for (int s = 0; s < d.n_states; ++s)
        if (!fin.count(s)) d.final.push_back(s);
    return d;
}

FiniteAutomaton reverse(const FiniteAutomaton& a) {
    FiniteAutomaton r = a;
    std::swap(r.initial, r.final);
    for (auto& t : r.transitions)
        std::swap(t.from, t.to);
    return r;
}

bool is_empty(const FiniteAutomaton& a) {
    FiniteAutomaton t = trim(a);
    return t.final.empty();
}

bool accepts(const FiniteAutomaton& a, const Word& w) {
    std::set<int> cur = eps_closure(a, {a.initial.begin(), a.initial.end()});
    for (const Symbol& sym : w) {
        if (!a.alphabet.contains(sym))
            throw ValidationError("accepts: symbol '" + sym + "' not in alphabet");
        std::set<int> next;
        for (const auto& t : a.transitions)
            if (t.label == sym && cur.count(t.from))
                next.insert(t.to);
        cur = eps_closure(a, std::move(next));
        if (cur.empty()) return false;
    }
    return any_final(a, cur);
}

std::vector<Word> enumerate(const FiniteAutomaton& a, std::size_t max_len) {
    FiniteAutomaton d = trim(determinize(a));
    std::vector<Word> out;
    if (d.initial.empty())
        return out;
    std::set<int> fin(d.final.begin(), d.final.end());
    // Level-order walk over DFA state sets keyed by word, alphabet order
    // within a level gives length-lex output directly.
    std::vector<std::pair<Word, int>> layer = {{Word{}, d.initial[0]}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (const auto& [w, s] : layer)
            if (fin.count(s)) out.push_back(w);
        if (len == max_len) break;
        std::vector<std::pair<Word, int>> next;
        for (const auto& [w, s] : layer)
            for (const Symbol& sym : d.alphabet.symbols())
                for (const auto& t : d.transitions)
                    if (t.from == s && t.label == sym) {
                        Word w2 = w;
                        w2.push_back(sym);
                        next.emplace_back(std::move(w2), t.to);
                    }
        // Re-sort: extensions of lexicographically ordered prefixes stay
        // ordered, so per-level stable generation suffices.
        std::sort(next.begin(), next.end(), [&](const auto& x, const auto& y) {
            return word_lenlex_less(d.alphabet, x.first, y.first);
        });
        layer = std::move(next);
        if (layer.empty()) break;
    }
    return out;
}

FiniteAutomaton singleton_automaton(const SymbolAlphabet& alphabet, const Word& w) {
    alphabet.require_word(w, "singleton_automaton");
    FiniteAutomaton a;
    a.alphabet = alphabet;
    a.n_states = static_cast<int>(w.size()) + 1;
    a.initial = {0};
    a.final = {a.n_states - 1};
    for (std::size_t i = 0; i < w.size(); ++i)
        a.transitions.push_back({static_cast<int>(i), w[i], static_cast<int>(i) + 1});
    return a;
}

FiniteAutomaton universal_automaton(const SymbolAlphabet& alphabet) {
    FiniteAutomaton a;
    a.alphabet = alphabet;
    a.n_states = 1;
    a.initial = {0};
    a.final = {0};
    for (const Symbol& s : alphabet.symbols())
        a.transitions.push_back({0, s, 0});
    return a;
}

}  // namespace infgraph
