#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "olens/document.hpp"

namespace olens {

// Two-outlet synthetic corpus: both outlets draw from the same topic
// vocabulary, but planted word k appears inside topic k's documents in
// outlet alpha and inside topic (k + planted) documents in outlet beta,
// so its contexts are disjoint across outlets. A fixed four-token run
// ("quada quadb quadc quadd") is sprinkled in as phrase-pass material.
struct SyntheticParams {
    int topics = 20;
    int words_per_topic = 60;
    int stopwords = 100;
    int planted = 10;
    int docs_per_outlet = 6667;
    int doc_len = 150;
    int title_len = 6;
    double stop_prob = 0.1;
    double planted_prob = 0.05;
    double quad_prob = 0.004;
    std::uint64_t seed = 42;
};

struct SyntheticCorpus {
    std::vector<Document> docs_a;  // outlet "alpha"
    std::vector<Document> docs_b;  // outlet "beta"
    std::vector<std::string> planted_words;
    std::vector<std::string> control_words;  // topic words + stopwords
};

SyntheticCorpus generate_synthetic(const SyntheticParams& params);

// Writes <dir>/alpha.jsonl and <dir>/beta.jsonl plus
// <dir>/planted_words.txt and <dir>/control_words.txt.
void write_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

}  // namespace olens
