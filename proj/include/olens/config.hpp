#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "olens/embedding.hpp"

namespace olens {

// Full pipeline configuration. Defaults reproduce the reference
// hyper-parameter table; every field has a CLI override.
struct PipelineConfig {
    // training
    int dim = 300;
    int window = 8;
    int epochs = 10;
    std::uint64_t min_count = 25;
    double subsample = 1e-5;
    double initial_lr = 0.025;
    double final_lr = 1e-4;
    std::string objective = "hierarchical-softmax";
    std::uint64_t seed = 1;
    int threads = 1;

    // tokenization / corpus assembly
    int min_token_len = 2;
    int max_token_len = 28;
    bool include_titles = true;
    bool whole_article = true;  // one training sequence per article

    // phrase passes
    double phrase_threshold1 = 90.0;
    double phrase_threshold2 = 120.0;
    std::uint64_t phrase_min_count = 5;

    // alignment + analysis
    std::string mapping_mode = "whole-vocab";  // or "top-3000"
    double cos_threshold = 0.4;
    double adj_threshold = 0.1;
    double close_threshold = 0.7;
    std::size_t bucket_size = 1000;
    std::size_t top_n = 1000;
    std::size_t expand_k = 20;
    std::size_t short_len = 3;

    // optional data paths (empty = not supplied)
    std::string seeds_path;
    std::string lexicon_path;
    std::string gazetteer_path;

    TrainParams train_params() const;
};

nlohmann::json config_to_json(const PipelineConfig& config);

// Strict: unknown keys and type mismatches are ParseErrors. Keys present
// in doc override the base config; absent keys keep the base values.
PipelineConfig config_from_json(const nlohmann::json& doc, const std::string& origin,
                                PipelineConfig base = {});

PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const PipelineConfig& config, const std::filesystem::path& path);

}  // namespace olens
