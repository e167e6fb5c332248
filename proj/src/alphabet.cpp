#include "infgraph/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace infgraph {

SymbolAlphabet::SymbolAlphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty())
        throw ValidationError("alphabet must be non-empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const Symbol& s = symbols_[i];
        if (s.empty())
            throw ValidationError("alphabet token must be non-empty");
        for (char c : s)
            if (std::isspace(static_cast<unsigned char>(c)))
                throw ValidationError("alphabet token contains whitespace: '" + s + "'");
        if (!index_.emplace(s, static_cast<int>(i)).second)
            throw ValidationError("duplicate alphabet token: '" + s + "'");
    }
}

int SymbolAlphabet::index_of(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end())
        throw ValidationError("symbol '" + s + "' not in alphabet");
    return it->second;
}

Word SymbolAlphabet::parse_word(const std::string& text) const {
    Word w;
    if (text.empty())
        return w;
    if (text.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t dot = text.find('.', pos);
            if (dot == std::string::npos) dot = text.size();
            std::string tok = text.substr(pos, dot - pos);
            if (!tok.empty()) {
                if (!contains(tok))
                    throw ValidationError("unknown symbol '" + tok + "' in word '" + text + "'");
                w.push_back(tok);
            }
            pos = dot + 1;
        }
        return w;
    }
    // Greedy longest-match tokenization.
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = 0;
        for (const Symbol& s : symbols_)
            if (s.size() > best && text.compare(pos, s.size(), s) == 0)
                best = s.size();
        if (best == 0)
            throw ValidationError("cannot tokenize '" + text + "' at position " +
                                  std::to_string(pos));
        w.push_back(text.substr(pos, best));
        pos += best;
    }
    return w;
}

void SymbolAlphabet::require_word(const Word& w, const std::string& what) const {
    for (const Symbol& s : w)
        if (!contains(s))
            throw ValidationError(what + ": symbol '" + s + "' not in alphabet");
}

std::string word_to_string(const Word& w) {
    bool multichar = std::any_of(w.begin(), w.end(),
                                 [](const Symbol& s) { return s.size() > 1 && (unsigned char)s[0] < 0x80; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (multichar && i > 0) out += '.';
        out += w[i];
    }
    return out;
}

bool word_lenlex_less(const SymbolAlphabet& a, const Word& x, const Word& y) {
    if (x.size() != y.size())
        return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        int ix = a.index_of(x[i]), iy = a.index_of(y[i]);
        if (ix != iy) return ix < iy;
    }
    return false;
}

}  // namespace infgraph
