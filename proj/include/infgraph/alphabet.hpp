// alphabet.hpp -- symbol alphabets and words over them.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace infgraph {

// Thrown on malformed inputs (unknown symbols, schema violations, ...).
// The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

using Symbol = std::string;
using Word = std::vector<Symbol>;

// Ordered finite set of tokens. Order is significant: enumeration and
// DOT output use it for deterministic results.
class SymbolAlphabet {
public:
    SymbolAlphabet() = default;
    explicit SymbolAlphabet(std::vector<Symbol> symbols);

    bool contains(const Symbol& s) const { return index_.count(s) > 0; }
    int index_of(const Symbol& s) const;
    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    // Parses a word. Empty string is epsilon. If the text contains '.',
    // it is split on dots; otherwise tokens are matched greedily
    // (longest symbol first), so single-letter alphabets read naturally.
    Word parse_word(const std::string& text) const;

    void require_word(const Word& w, const std::string& what) const;

    bool operator==(const SymbolAlphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::map<Symbol, int> index_;
};

std::string word_to_string(const Word& w);

// Length-lexicographic comparison using the given alphabet order.
bool word_lenlex_less(const SymbolAlphabet& a, const Word& x, const Word& y);

}  // namespace infgraph
