#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "olens/embedding.hpp"

namespace olens {

struct SimilarityPair {
    std::string a;
    std::string b;
    double score = 0.0;
};

struct SimilarityDataset {
    std::string name;
    std::pair<double, double> score_scale{0.0, 10.0};
    std::vector<SimilarityPair> pairs;
};

struct AnalogyQuestion {
    std::string a, b, c, expected;
    std::size_t section = 0;  // index into AnalogyDataset::sections
};

struct AnalogyDataset {
    std::string name;
    std::vector<std::string> sections;
    std::vector<AnalogyQuestion> questions;
};

struct SpearmanResult {
    double rho = 0.0;
    double coverage = 0.0;
    std::size_t retained = 0;
    std::size_t skipped = 0;
};

struct SectionResult {
    std::string section;
    std::size_t correct = 0;
    std::size_t retained = 0;
    std::size_t total = 0;
    double accuracy = 0.0;  // over retained; 0 when nothing retained
};

struct AnalogyResult {
    double accuracy = 0.0;
    double coverage = 0.0;
    std::size_t correct = 0;
    std::size_t retained = 0;
    std::size_t total = 0;
    std::vector<SectionResult> sections;
};

// `word_a<TAB>word_b<TAB>score` per line; # comments and blanks ignored.
SimilarityDataset load_similarity_tsv(const std::filesystem::path& path, std::string name,
                                      std::pair<double, double> score_scale = {0.0, 10.0});

// MEN: `word_a word_b score` space-separated, scores on [0, 50].
SimilarityDataset load_men(const std::filesystem::path& path);

// Google analogy format: `: section-name` headers, then `a b c d` lines.
// Sections whose name starts with "gram" are the syntactic block.
AnalogyDataset load_google_analogies(const std::filesystem::path& path,
                                     std::string name = "google");

// Spearman rank correlation (average-rank ties) between human scores and
// input-vector cosines over pairs fully inside the vocabulary.
SpearmanResult spearman_eval(const EmbeddingSpace& space, const SimilarityDataset& ds);

// 3CosAdd over length-normalized vectors: argmax_w cos(v_b - v_a + v_c, v_w)
// excluding a, b, c; ties go to the lowest word id. Questions with any OOV
// word are skipped.
AnalogyResult analogy_eval(const EmbeddingSpace& space, const AnalogyDataset& ds,
                           int threads = 1);

// Rows of `dataset<TAB>metric<TAB>value<TAB>coverage`.
std::string similarity_result_tsv(const std::string& dataset, const SpearmanResult& r);
std::string analogy_result_tsv(const std::string& dataset, const AnalogyResult& r);

}  // namespace olens
