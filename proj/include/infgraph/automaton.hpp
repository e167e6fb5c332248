// automaton.hpp -- finite automata and regular expressions.
//
// Automata are immutable values after construction: every operation
// returns a new automaton. Epsilon transitions are allowed in the
// representation (label "") and removed by determinize().
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infgraph/alphabet.hpp"

namespace infgraph {

struct FATransition {
    int from;
    Symbol label;  // "" means epsilon
    int to;
    auto operator<=>(const FATransition&) const = default;
};

struct FiniteAutomaton {
    SymbolAlphabet alphabet;
    int n_states = 0;
    std::vector<int> initial;
    std::vector<int> final;
    std::vector<FATransition> transitions;

    void validate() const;
};

// Maximum automaton size, from INFGRAPH_MAX_STATES (default 1e6).
// Constructions that would exceed it throw.
std::size_t max_states();

// ---- regular expressions ----

struct RegularExpression {
    enum class Kind { Empty, Epsilon, Sym, Union, Concat, Star };
    Kind kind = Kind::Empty;
    Symbol sym;
    std::shared_ptr<RegularExpression> left, right;  // right unused for Star
};

// Syntax: `+` union, juxtaposition concatenation, `*` star, parentheses,
// `()` epsilon, `{}` empty set. Symbols tokenize greedily against the
// alphabet; `.` separates tokens and is otherwise ignored.
RegularExpression parse_regex(const std::string& text, const SymbolAlphabet& alphabet);

// Direct recursive matcher, independent of compile(); used as a test oracle.
bool regex_matches(const RegularExpression& r, const Word& w);

// Thompson-style construction; at most 2 states per syntax node.
FiniteAutomaton compile(const RegularExpression& r, const SymbolAlphabet& alphabet);
FiniteAutomaton compile(const std::string& regex, const SymbolAlphabet& alphabet);

// ---- language algebra ----

FiniteAutomaton determinize(const FiniteAutomaton& a);
FiniteAutomaton intersect(const FiniteAutomaton& a, const FiniteAutomaton& b);
FiniteAutomaton unite(const FiniteAutomaton& a, const FiniteAutomaton& b);
FiniteAutomaton complement(const FiniteAutomaton& a);
FiniteAutomaton reverse(const FiniteAutomaton& a);
bool is_empty(const FiniteAutomaton& a);
bool accepts(const FiniteAutomaton& a, const Word& w);
// All accepted words of length <= max_len, in length-lex order.
std::vector<Word> enumerate(const FiniteAutomaton& a, std::size_t max_len);

// Drops states not on a path from an initial to a final state.
FiniteAutomaton trim(const FiniteAutomaton& a);

// Automaton accepting exactly {w}.
FiniteAutomaton singleton_automaton(const SymbolAlphabet& alphabet, const Word& w);
// Automaton accepting all of alphabet*.
FiniteAutomaton universal_automaton(const SymbolAlphabet& alphabet);

}  // namespace infgraph
