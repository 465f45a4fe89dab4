#include "olens/vocab.hpp"

#include <algorithm>
#include <cmath>

#include "olens/errors.hpp"

namespace olens {

Vocabulary build_vocab(std::span<const TokenSequence> corpus, std::uint64_t min_count) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& seq : corpus)
        for (const auto& token : seq) ++counts[token];

    std::vector<std::pair<std::string, std::uint64_t>> kept;
    kept.reserve(counts.size());
    for (auto& [word, count] : counts)
        if (count >= min_count) kept.emplace_back(word, count);
    if (kept.empty())
        throw EmptyVocabularyError("no word reaches min_count " + std::to_string(min_count));

    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.words.reserve(kept.size());
    vocab.counts.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        vocab.words.push_back(kept[i].first);
        vocab.counts.push_back(kept[i].second);
        vocab.total_tokens += kept[i].second;
        vocab.index.emplace(kept[i].first, static_cast<std::int32_t>(i));
    }
    return vocab;
}

double keep_probability(std::uint64_t word_freq, std::uint64_t total, double t) {
    const double ratio = t * static_cast<double>(total) / static_cast<double>(word_freq);
    return std::min(1.0, std::sqrt(ratio));
}

}  // namespace olens
