#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "olens/align.hpp"
#include "olens/embedding.hpp"
#include "olens/phrases.hpp"
#include "olens/similarity_record.hpp"
#include "olens/text.hpp"

namespace olens {

// ---- word2vec text format ----
// First line `<V> <d>`, then `<word> <v1> ... <vd>` per line, shortest
// round-trip decimals, so load(save(x)) is bit-exact.
void save_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path);

// Loaded spaces carry words in file order (id = line order), zero counts
// (attach a vocabulary for frequencies), an empty inner matrix, and zero
// meta. Typed parse errors carry 1-based line numbers.
EmbeddingSpace load_embeddings(const std::filesystem::path& path);

// Copies counts/total from a saved vocabulary into a loaded space. Word
// sets must match exactly.
void attach_counts(EmbeddingSpace& space, const Vocabulary& vocab);

// ---- vocabulary: `word<TAB>count` rows in id order ----
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocab(const std::filesystem::path& path);

// ---- phrase table: `left<TAB>right<TAB>score` rows, score-descending ----
void save_phrases(const PhraseTable& table, const std::filesystem::path& path);
PhraseTable load_phrases(const std::filesystem::path& path, double threshold,
                         std::uint64_t min_count);

// ---- alignment matrix: `d d` header, then d rows of d decimals ----
void save_mapping(const AlignmentMatrix& m, const std::filesystem::path& path);
AlignmentMatrix load_mapping(const std::filesystem::path& path);

// ---- similarity records: `word cos adj freq_src freq_tgt bucket` TSV ----
void save_similarity(const std::vector<SimilarityRecord>& records,
                     const std::filesystem::path& path);
std::vector<SimilarityRecord> load_similarity(const std::filesystem::path& path);

// ---- tokenized corpus: one document per line, space-separated ----
void save_corpus(const std::vector<TokenSequence>& docs, const std::filesystem::path& path);
std::vector<TokenSequence> load_corpus(const std::filesystem::path& path);

// ---- checksums ----
std::string fnv1a64(std::string_view bytes);
std::string fnv1a64_file(const std::filesystem::path& path);

// ---- run manifest ----
// Records the config snapshot and a checksum per artifact so stages can
// detect stale or missing inputs.
struct Manifest {
    nlohmann::json config = nlohmann::json::object();
    std::map<std::string, std::string> checksums;  // run-dir-relative path -> fnv1a64
    std::map<std::string, std::string> stages;     // run-dir-relative path -> producing stage
    std::string created;
    std::string updated;
};

void save_manifest(Manifest& manifest, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

// Hashes run_dir/rel_path and records it under the given stage.
void manifest_record(Manifest& manifest, const std::filesystem::path& run_dir,
                     const std::string& rel_path, const std::string& stage);

// Checks one recorded artifact: MissingArtifactError if absent (hint names
// the stage to rerun), StaleArtifactError on checksum mismatch.
void manifest_verify(const Manifest& manifest, const std::filesystem::path& run_dir,
                     const std::string& rel_path);

// Verifies every recorded artifact.
void manifest_verify_all(const Manifest& manifest, const std::filesystem::path& run_dir);

}  // namespace olens
