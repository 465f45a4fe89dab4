#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olens/text.hpp"

namespace olens {

// Frequency-filtered vocabulary. Ids are dense 0..|V|-1, ordered by
// descending count with lexicographic tie-break, so a word's id is also
// its frequency rank.
struct Vocabulary {
    std::vector<std::string> words;
    std::vector<std::uint64_t> counts;
    std::uint64_t total_tokens = 0;  // retained tokens only
    std::unordered_map<std::string, std::int32_t> index;

    std::size_t size() const { return words.size(); }
    std::optional<std::int32_t> id_of(std::string_view word) const {
        auto it = index.find(std::string(word));
        return it == index.end() ? std::nullopt : std::optional<std::int32_t>(it->second);
    }
};

// Throws EmptyVocabularyError when no word survives the count filter.
Vocabulary build_vocab(std::span<const TokenSequence> corpus, std::uint64_t min_count = 25);

// min(1, sqrt(t * total / word_freq)); the trainer keeps each occurrence
// with this probability.
double keep_probability(std::uint64_t word_freq, std::uint64_t total, double t = 1e-5);

}  // namespace olens
