#pragma once

#include <string>
#include <vector>

namespace metasel {

struct AnalyzerConfig {
    bool remove_stopwords = false;
    bool stem = false;

    bool operator==(const AnalyzerConfig&) const = default;
};

// Lowercases and splits on every non-alphanumeric byte. Multi-byte UTF-8
// sequences are kept inside tokens unchanged (no case mapping outside
// ASCII). Empty fragments are discarded; order is preserved.
std::vector<std::string> tokenize(const std::string& text,
                                  const AnalyzerConfig& config = {});

bool is_stopword(const std::string& term);

// Light plural/suffix stripper ("sses"->"ss", "ies"->"i", trailing "s"
// dropped). Off by default.
std::string stem_term(const std::string& term);

}  // namespace metasel
