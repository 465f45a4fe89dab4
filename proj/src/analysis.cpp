#include "olens/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include "olens/errors.hpp"
#include "olens/stats.hpp"
#include "olens/train.hpp"

namespace olens {

namespace {

std::string lower_ascii(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::ifstream open_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<FrequencyBucket> bucketize(std::vector<SimilarityRecord>& records,
                                       std::size_t bucket_size) {
    if (bucket_size < 3) throw InvalidArgumentError("bucket_size must be at least 3");
    std::sort(records.begin(), records.end(),
              [](const SimilarityRecord& a, const SimilarityRecord& b) {
                  if (a.freq_src != b.freq_src) return a.freq_src > b.freq_src;
                  return a.word < b.word;
              });

    std::vector<FrequencyBucket> buckets;
    for (std::size_t start = 0; start < records.size(); start += bucket_size) {
        const std::size_t end = std::min(start + bucket_size, records.size());
        FrequencyBucket bucket;
        bucket.bucket_id = static_cast<std::int32_t>(buckets.size());
        std::vector<double> cosines;
        cosines.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) {
            bucket.members.push_back(records[i].word);
            cosines.push_back(records[i].cosine);
        }
        bucket.median_cosine = median(std::move(cosines));
        for (std::size_t i = start; i < end; ++i) {
            records[i].bucket_id = bucket.bucket_id;
            records[i].adjusted = bucket.median_cosine - records[i].cosine;
        }
        buckets.push_back(std::move(bucket));
    }
    return buckets;
}

DistantWords distant_words(const std::vector<SimilarityRecord>& records, double cos_thresh,
                           double adj_thresh, std::size_t top_n) {
    for (const SimilarityRecord& r : records) {
        if (r.bucket_id < 0) {
            throw InvalidArgumentError("records lack adjusted distances; run bucketize first");
        }
    }

    DistantWords out;
    for (const SimilarityRecord& r : records) {
        if (r.cosine <= cos_thresh) out.by_cosine.push_back(r);
        if (r.adjusted >= adj_thresh) out.by_adjusted.push_back(r);
    }
    auto more_distant_cos = [](const SimilarityRecord& a, const SimilarityRecord& b) {
        if (a.cosine != b.cosine) return a.cosine < b.cosine;
        return a.word < b.word;
    };
    auto more_distant_adj = [](const SimilarityRecord& a, const SimilarityRecord& b) {
        if (a.adjusted != b.adjusted) return a.adjusted > b.adjusted;
        return a.word < b.word;
    };
    std::sort(out.by_cosine.begin(), out.by_cosine.end(), more_distant_cos);
    std::sort(out.by_adjusted.begin(), out.by_adjusted.end(), more_distant_adj);

    // Overlap over the full ranking, threshold-free: the paper's "new words"
    // count compares the two top-N lists.
    out.top_n = std::min(top_n, records.size());
    std::vector<SimilarityRecord> by_cos(records);
    std::vector<SimilarityRecord> by_adj(records);
    std::partial_sort(by_cos.begin(), by_cos.begin() + static_cast<std::ptrdiff_t>(out.top_n),
                      by_cos.end(), more_distant_cos);
    std::partial_sort(by_adj.begin(), by_adj.begin() + static_cast<std::ptrdiff_t>(out.top_n),
                      by_adj.end(), more_distant_adj);
    std::unordered_set<std::string> cos_top;
    for (std::size_t i = 0; i < out.top_n; ++i) cos_top.insert(by_cos[i].word);
    for (std::size_t i = 0; i < out.top_n; ++i) {
        if (!cos_top.contains(by_adj[i].word)) ++out.new_in_adjusted;
    }
    return out;
}

double freq_similarity_correlation(const std::vector<SimilarityRecord>& records, FreqSide which) {
    if (records.size() < 3) {
        throw InsufficientDataError("need at least 3 records for the frequency correlation");
    }
    std::vector<double> cosines;
    std::vector<double> freqs;
    cosines.reserve(records.size());
    freqs.reserve(records.size());
    for (const SimilarityRecord& r : records) {
        cosines.push_back(r.cosine);
        freqs.push_back(static_cast<double>(which == FreqSide::src ? r.freq_src : r.freq_tgt));
    }
    return spearman(cosines, freqs);
}

SeedLexicon load_seed_lexicon(const std::filesystem::path& path) {
    SeedLexicon lex;
    std::ifstream in = open_text(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw ParseError(path.string(), line_no, "expected issue<TAB>word");
        }
        if (line.find('\t', tab + 1) != std::string::npos) {
            throw ParseError(path.string(), line_no, "expected exactly two fields");
        }
        lex.entries.push_back({line.substr(0, tab), lower_ascii(line.substr(tab + 1))});
    }
    return lex;
}

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
    std::unordered_set<std::string> words;
    std::ifstream in = open_text(path);
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        words.insert(lower_ascii(line));
    }
    return words;
}

ExpansionReport expand_seeds(const EmbeddingSpace& space, const SeedLexicon& seeds,
                             std::size_t k) {
    ExpansionReport report;
    for (const SeedLexicon::Entry& entry : seeds.entries) {
        if (!space.vocab.id_of(entry.word)) {
            report.skipped.push_back(entry.word);
            continue;
        }
        SeedExpansion exp;
        exp.issue = entry.issue;
        exp.seed = entry.word;
        exp.neighbors = nearest_neighbors(space, entry.word, k);
        report.expansions.push_back(std::move(exp));
    }
    return report;
}

GroupStats group_stats(const std::vector<SimilarityRecord>& records,
                       const std::unordered_set<std::string>& group) {
    std::vector<double> cosines;
    std::vector<double> adjusted;
    for (const SimilarityRecord& r : records) {
        if (!group.contains(r.word)) continue;
        cosines.push_back(r.cosine);
        adjusted.push_back(r.adjusted);
    }
    if (cosines.empty()) {
        throw EmptyGroupError("no group word appears among the records");
    }
    GroupStats stats;
    stats.n_found = cosines.size();
    stats.median_cosine = median(std::move(cosines));
    stats.median_adjusted = median(std::move(adjusted));
    return stats;
}

DistantBreakdown classify_distant(const std::vector<std::string>& top_words,
                                  const std::unordered_set<std::string>& name_list,
                                  std::size_t short_len) {
    DistantBreakdown b;
    for (const std::string& word : top_words) {
        if (name_list.contains(word)) {
            ++b.names;
        } else if (word.size() <= short_len) {
            ++b.short_noise;
        } else {
            ++b.other;
        }
    }
    const std::size_t total = top_words.size();
    b.other_fraction = total == 0 ? 0.0 : static_cast<double>(b.other) / static_cast<double>(total);
    return b;
}

}  // namespace olens
