#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "olens/text.hpp"

namespace olens {

struct PhraseEntry {
    std::string left;
    std::string right;
    double score = 0.0;
};

// High-scoring adjacent bigrams from one counting pass. Lookup key is the
// ordered token pair; apply_phrases joins matches with '_'.
class PhraseTable {
public:
    PhraseTable() = default;
    PhraseTable(double threshold, std::uint64_t min_count)
        : threshold_(threshold), min_count_(min_count) {}

    void add(const std::string& left, const std::string& right, double score);
    bool contains(const std::string& left, const std::string& right) const;
    std::size_t size() const { return entries_.size(); }
    double threshold() const { return threshold_; }
    std::uint64_t min_count() const { return min_count_; }
    static constexpr char joiner = '_';

    // Entries sorted by descending score, then (left, right).
    std::vector<PhraseEntry> sorted_entries() const;

private:
    static std::string key(const std::string& left, const std::string& right) {
        return left + '\t' + right;
    }
    std::unordered_map<std::string, double> entries_;
    double threshold_ = 0.0;
    std::uint64_t min_count_ = 0;
};

// Collocation score (pair_count - min_count) * total_tokens /
// (left_count * right_count). Negative when pair_count < min_count.
double bigram_score(std::uint64_t pair_count, std::uint64_t left_count,
                    std::uint64_t right_count, std::uint64_t total_tokens,
                    std::uint64_t min_count);

// One pass over the corpus counting unigrams and adjacent bigrams, keeping
// every bigram whose score reaches the threshold. Output is independent of
// the thread count.
PhraseTable detect_phrases(std::span<const TokenSequence> corpus, double threshold,
                           std::uint64_t min_count, int threads = 1);

// Greedy left-to-right merge; a token consumed by a merge cannot start
// another merge in the same pass.
TokenSequence apply_phrases(const TokenSequence& seq, const PhraseTable& table);

}  // namespace olens
