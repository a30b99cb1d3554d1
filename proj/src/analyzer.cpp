#include "metasel/analyzer.hpp"

#include <array>
#include <cctype>

namespace metasel {

namespace {

bool token_byte(unsigned char c) {
    // ASCII letters/digits plus any non-ASCII byte (UTF-8 continuation or
    // lead bytes stay inside tokens).
    return std::isalnum(c) || c >= 0x80;
}

const std::array<const char*, 32> kStopwords = {
    "a",    "an",  "and",  "are", "as",   "at",   "be",   "by",
    "for",  "from", "has", "he",  "in",   "is",   "it",   "its",
    "of",   "on",  "or",   "that", "the", "this", "to",   "was",
    "were", "will", "with", "we",  "our",  "their", "these", "those"};

}  // namespace

bool is_stopword(const std::string& term) {
    for (const char* w : kStopwords)
        if (term == w) return true;
    return false;
}

std::string stem_term(const std::string& term) {
    auto ends_with = [&](const char* suf) {
        std::string s(suf);
        return term.size() > s.size() && term.compare(term.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with("sses")) return term.substr(0, term.size() - 2);
    if (ends_with("ies")) return term.substr(0, term.size() - 2);
    if (ends_with("ss")) return term;
    if (ends_with("s")) return term.substr(0, term.size() - 1);
    return term;
}

std::vector<std::string> tokenize(const std::string& text, const AnalyzerConfig& config) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (config.remove_stopwords && is_stopword(cur)) {
            cur.clear();
            return;
        }
        if (config.stem) cur = stem_term(cur);
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (token_byte(c)) {
            cur += static_cast<char>(std::isupper(c) ? std::tolower(c) : c);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

}  // namespace metasel
