#pragma once

#include <cstdint>
#include <string>

namespace olens {

// One common-vocabulary word's cross-space comparison. bucket_id and
// adjusted are filled in by analysis::bucketize; adjusted = bucket median
// cosine minus this word's cosine, so positive means less similar than
// at least half of its frequency peers.
struct SimilarityRecord {
    std::string word;
    double cosine = 0.0;
    std::uint64_t freq_src = 0;
    std::uint64_t freq_tgt = 0;
    std::int32_t bucket_id = -1;
    double adjusted = 0.0;
};

}  // namespace olens
