#include "olens/text.hpp"

#include <array>

namespace olens {

namespace {

// Latin-1 Supplement letters, indexed by codepoint - 0xC0. Empty entries
// (multiplication/division signs) have no ASCII folding.
constexpr std::array<const char*, 64> kLatin1Fold = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "y",
};

// Latin Extended-A, indexed by codepoint - 0x100.
constexpr std::array<const char*, 128> kLatinExtAFold = {
    "a", "a", "a", "a", "a", "a",                      // 0100 A-ogonek family
    "c", "c", "c", "c", "c", "c", "c", "c",            // 0106 C with acute..caron
    "d", "d", "d", "d",                                // 010E D with caron, stroke
    "e", "e", "e", "e", "e", "e", "e", "e", "e", "e",  // 0112 E variants
    "g", "g", "g", "g", "g", "g", "g", "g",            // 011C G variants
    "h", "h", "h", "h",                                // 0124 H variants
    "i", "i", "i", "i", "i", "i", "i", "i",            // 0128 I variants
    "i", "i",                                          // 0130 dotted I, dotless i
    "ij", "ij",                                        // 0132 IJ ligature
    "j", "j",                                          // 0134 J circumflex
    "k", "k", "k",                                     // 0136 K cedilla, kra
    "l", "l", "l", "l", "l", "l", "l", "l", "l", "l",  // 0139 L variants
    "n", "n", "n", "n", "n", "n", "n", "n", "n",       // 0143 N variants, eng
    "o", "o", "o", "o", "o", "o",                      // 014C O variants
    "oe", "oe",                                        // 0152 OE ligature
    "r", "r", "r", "r", "r", "r",                      // 0154 R variants
    "s", "s", "s", "s", "s", "s", "s", "s",            // 015A S variants
    "t", "t", "t", "t", "t", "t",                      // 0162 T variants
    "u", "u", "u", "u", "u", "u", "u", "u", "u", "u", "u", "u",  // 0168 U variants
    "w", "w",                                          // 0174 W circumflex
    "y", "y", "y",                                     // 0176 Y variants
    "z", "z", "z", "z", "z", "z",                      // 0179 Z variants
    "s",                                               // 017F long s
};

constexpr char32_t kInvalid = 0xFFFD;

// Minimal UTF-8 decoder. Malformed sequences decode to U+FFFD and advance
// one byte, so bad input degrades into token boundaries.
char32_t next_codepoint(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        pos += 1;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
        pos += 2;
        return cp >= 0x80 ? cp : kInvalid;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) |
                      (byte(pos + 2) & 0x3Fu);
        pos += 3;
        return cp >= 0x800 ? cp : kInvalid;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                      ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
        pos += 4;
        return cp >= 0x10000 ? cp : kInvalid;
    }
    pos += 1;
    return kInvalid;
}

}  // namespace

std::string_view fold_codepoint(char32_t cp) {
    if (cp >= 'a' && cp <= 'z') {
        static constexpr const char* kAscii = "abcdefghijklmnopqrstuvwxyz";
        return {kAscii + (cp - 'a'), 1};
    }
    if (cp >= 'A' && cp <= 'Z') return fold_codepoint(cp - 'A' + 'a');
    if (cp >= 0xC0 && cp <= 0xFF) return kLatin1Fold[cp - 0xC0];
    if (cp >= 0x100 && cp <= 0x17F) return kLatinExtAFold[cp - 0x100];
    return {};
}

TokenSequence tokenize(std::string_view text, const TokenizerOptions& opts) {
    TokenSequence out;
    std::string token;
    auto flush = [&] {
        if (token.size() >= opts.min_len && token.size() <= opts.max_len)
            out.push_back(token);
        token.clear();
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = next_codepoint(text, pos);
        std::string_view folded = fold_codepoint(cp);
        if (folded.empty())
            flush();
        else
            token.append(folded);
    }
    flush();
    return out;
}

}  // namespace olens
