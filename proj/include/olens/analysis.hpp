#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "olens/embedding.hpp"
#include "olens/similarity_record.hpp"

namespace olens {

struct FrequencyBucket {
    std::int32_t bucket_id = 0;
    std::vector<std::string> members;  // contiguous in frequency rank
    double median_cosine = 0.0;
};

// Sorts records by descending source frequency (lexicographic tie-break),
// partitions them into consecutive runs of bucket_size (last may be short),
// and fills each record's bucket_id and adjusted = bucket median - cosine.
// bucket_size must be >= 3.
std::vector<FrequencyBucket> bucketize(std::vector<SimilarityRecord>& records,
                                       std::size_t bucket_size);

struct DistantWords {
    std::vector<SimilarityRecord> by_cosine;    // cosine <= cos_thresh, ascending
    std::vector<SimilarityRecord> by_adjusted;  // adjusted >= adj_thresh, descending
    std::size_t top_n = 0;
    std::size_t new_in_adjusted = 0;  // top-N adjusted words absent from top-N cosine
};

// Requires bucketize to have run (every record carries a bucket).
DistantWords distant_words(const std::vector<SimilarityRecord>& records,
                           double cos_thresh = 0.4, double adj_thresh = 0.1,
                           std::size_t top_n = 1000);

enum class FreqSide { src, tgt };

// Spearman correlation between cosine similarity and corpus frequency.
double freq_similarity_correlation(const std::vector<SimilarityRecord>& records, FreqSide which);

struct SeedLexicon {
    struct Entry {
        std::string issue;
        std::string word;
    };
    std::vector<Entry> entries;
};

// TSV `issue<TAB>word`, one seed per line; # comments and blanks ignored.
SeedLexicon load_seed_lexicon(const std::filesystem::path& path);

// One word per line (gazetteer / external bias lexicon), lowercased.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

struct SeedExpansion {
    std::string issue;
    std::string seed;
    std::vector<std::pair<std::string, double>> neighbors;
};

struct ExpansionReport {
    std::vector<SeedExpansion> expansions;
    std::vector<std::string> skipped;  // OOV seeds
};

// Top-k nearest neighbors per in-vocabulary seed; OOV seeds are reported,
// never scored.
ExpansionReport expand_seeds(const EmbeddingSpace& space, const SeedLexicon& seeds,
                             std::size_t k = 20);

struct GroupStats {
    std::size_t n_found = 0;
    double median_cosine = 0.0;
    double median_adjusted = 0.0;
};

// Restricts records to the group; throws EmptyGroupError when no group
// word appears among the records.
GroupStats group_stats(const std::vector<SimilarityRecord>& records,
                       const std::unordered_set<std::string>& group);

struct DistantBreakdown {
    std::size_t names = 0;
    std::size_t short_noise = 0;
    std::size_t other = 0;
    double other_fraction = 0.0;
};

// Gazetteer names first, then tokens of at most short_len characters,
// everything else "other".
DistantBreakdown classify_distant(const std::vector<std::string>& top_words,
                                  const std::unordered_set<std::string>& name_list,
                                  std::size_t short_len = 3);

}  // namespace olens
