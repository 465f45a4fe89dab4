#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace olens {

// One document's tokens, in order. Lowercase, alphabetic plus the
// phrase joiner '_' once phrase passes have run.
using TokenSequence = std::vector<std::string>;

struct TokenizerOptions {
    std::size_t min_len = 2;
    std::size_t max_len = 28;
};

// Lowercases, folds common accented Latin letters to ASCII, and splits on
// everything non-alphabetic. Tokens outside [min_len, max_len] are dropped.
// Codepoints without an ASCII folding act as token boundaries.
TokenSequence tokenize(std::string_view text, const TokenizerOptions& opts = {});

// ASCII folding for one codepoint; empty when no mapping exists.
// Exposed for tests.
std::string_view fold_codepoint(char32_t cp);

}  // namespace olens
