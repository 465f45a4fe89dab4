#include "olens/phrases.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace olens {

void PhraseTable::add(const std::string& left, const std::string& right, double score) {
    entries_[key(left, right)] = score;
}

bool PhraseTable::contains(const std::string& left, const std::string& right) const {
    return entries_.count(key(left, right)) != 0;
}

std::vector<PhraseEntry> PhraseTable::sorted_entries() const {
    std::vector<PhraseEntry> out;
    out.reserve(entries_.size());
    for (const auto& [k, score] : entries_) {
        auto tab = k.find('\t');
        out.push_back({k.substr(0, tab), k.substr(tab + 1), score});
    }
    std::sort(out.begin(), out.end(), [](const PhraseEntry& a, const PhraseEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.left != b.left) return a.left < b.left;
        return a.right < b.right;
    });
    return out;
}

double bigram_score(std::uint64_t pair_count, std::uint64_t left_count,
                    std::uint64_t right_count, std::uint64_t total_tokens,
                    std::uint64_t min_count) {
    const double numerator =
        (static_cast<double>(pair_count) - static_cast<double>(min_count)) *
        static_cast<double>(total_tokens);
    return numerator / (static_cast<double>(left_count) * static_cast<double>(right_count));
}

namespace {

struct PassCounts {
    std::unordered_map<std::string, std::uint64_t> unigrams;
    std::unordered_map<std::string, std::uint64_t> bigrams;  // "left\tright"
    std::uint64_t total = 0;

    void absorb(PassCounts&& other) {
        for (auto& [k, v] : other.unigrams) unigrams[k] += v;
        for (auto& [k, v] : other.bigrams) bigrams[k] += v;
        total += other.total;
    }
};

void count_sequence(const TokenSequence& seq, PassCounts& c) {
    c.total += seq.size();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        ++c.unigrams[seq[i]];
        if (i + 1 < seq.size()) ++c.bigrams[seq[i] + '\t' + seq[i + 1]];
    }
}

PassCounts count_corpus(std::span<const TokenSequence> corpus, int threads) {
    PassCounts merged;
#ifdef _OPENMP
    if (threads > 1) {
        std::vector<PassCounts> partial(threads);
#pragma omp parallel num_threads(threads)
        {
            PassCounts& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i)
                count_sequence(corpus[i], mine);
        }
        for (auto& p : partial) merged.absorb(std::move(p));
        return merged;
    }
#endif
    (void)threads;
    for (const auto& seq : corpus) count_sequence(seq, merged);
    return merged;
}

}  // namespace

PhraseTable detect_phrases(std::span<const TokenSequence> corpus, double threshold,
                           std::uint64_t min_count, int threads) {
    PassCounts counts = count_corpus(corpus, threads);
    PhraseTable table(threshold, min_count);
    for (const auto& [key, pair_count] : counts.bigrams) {
        auto tab = key.find('\t');
        const std::string left = key.substr(0, tab);
        const std::string right = key.substr(tab + 1);
        const double score = bigram_score(pair_count, counts.unigrams.at(left),
                                          counts.unigrams.at(right), counts.total,
                                          min_count);
        if (score >= threshold) table.add(left, right, score);
    }
    return table;
}

TokenSequence apply_phrases(const TokenSequence& seq, const PhraseTable& table) {
    TokenSequence out;
    out.reserve(seq.size());
    std::size_t i = 0;
    while (i < seq.size()) {
        if (i + 1 < seq.size() && table.contains(seq[i], seq[i + 1])) {
            out.push_back(seq[i] + PhraseTable::joiner + seq[i + 1]);
            i += 2;
        } else {
            out.push_back(seq[i]);
            i += 1;
        }
    }
    return out;
}

}  // namespace olens
