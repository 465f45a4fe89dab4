#include "olens/config.hpp"

#include <fstream>

#include "olens/errors.hpp"

namespace olens {

TrainParams PipelineConfig::train_params() const {
    TrainParams p;
    p.dim = dim;
    p.window = window;
    p.epochs = epochs;
    p.min_count = min_count;
    p.subsample_t = subsample;
    p.initial_lr = initial_lr;
    p.final_lr = final_lr;
    p.seed = seed;
    p.threads = threads;
    return p;
}

nlohmann::json config_to_json(const PipelineConfig& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    j["window"] = c.window;
    j["epochs"] = c.epochs;
    j["min_count"] = c.min_count;
    j["subsample"] = c.subsample;
    j["initial_lr"] = c.initial_lr;
    j["final_lr"] = c.final_lr;
    j["objective"] = c.objective;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["min_token_len"] = c.min_token_len;
    j["max_token_len"] = c.max_token_len;
    j["include_titles"] = c.include_titles;
    j["whole_article"] = c.whole_article;
    j["phrase_threshold1"] = c.phrase_threshold1;
    j["phrase_threshold2"] = c.phrase_threshold2;
    j["phrase_min_count"] = c.phrase_min_count;
    j["mapping_mode"] = c.mapping_mode;
    j["cos_threshold"] = c.cos_threshold;
    j["adj_threshold"] = c.adj_threshold;
    j["close_threshold"] = c.close_threshold;
    j["bucket_size"] = c.bucket_size;
    j["top_n"] = c.top_n;
    j["expand_k"] = c.expand_k;
    j["short_len"] = c.short_len;
    j["seeds_path"] = c.seeds_path;
    j["lexicon_path"] = c.lexicon_path;
    j["gazetteer_path"] = c.gazetteer_path;
    return j;
}

PipelineConfig config_from_json(const nlohmann::json& doc, const std::string& origin,
                                PipelineConfig base) {
    if (!doc.is_object()) throw ParseError(origin + ": config must be a JSON object");
    PipelineConfig c = std::move(base);
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "dim") c.dim = value.get<int>();
            else if (key == "window") c.window = value.get<int>();
            else if (key == "epochs") c.epochs = value.get<int>();
            else if (key == "min_count") c.min_count = value.get<std::uint64_t>();
            else if (key == "subsample") c.subsample = value.get<double>();
            else if (key == "initial_lr") c.initial_lr = value.get<double>();
            else if (key == "final_lr") c.final_lr = value.get<double>();
            else if (key == "objective") c.objective = value.get<std::string>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "threads") c.threads = value.get<int>();
            else if (key == "min_token_len") c.min_token_len = value.get<int>();
            else if (key == "max_token_len") c.max_token_len = value.get<int>();
            else if (key == "include_titles") c.include_titles = value.get<bool>();
            else if (key == "whole_article") c.whole_article = value.get<bool>();
            else if (key == "phrase_threshold1") c.phrase_threshold1 = value.get<double>();
            else if (key == "phrase_threshold2") c.phrase_threshold2 = value.get<double>();
            else if (key == "phrase_min_count") c.phrase_min_count = value.get<std::uint64_t>();
            else if (key == "mapping_mode") c.mapping_mode = value.get<std::string>();
            else if (key == "cos_threshold") c.cos_threshold = value.get<double>();
            else if (key == "adj_threshold") c.adj_threshold = value.get<double>();
            else if (key == "close_threshold") c.close_threshold = value.get<double>();
            else if (key == "bucket_size") c.bucket_size = value.get<std::size_t>();
            else if (key == "top_n") c.top_n = value.get<std::size_t>();
            else if (key == "expand_k") c.expand_k = value.get<std::size_t>();
            else if (key == "short_len") c.short_len = value.get<std::size_t>();
            else if (key == "seeds_path") c.seeds_path = value.get<std::string>();
            else if (key == "lexicon_path") c.lexicon_path = value.get<std::string>();
            else if (key == "gazetteer_path") c.gazetteer_path = value.get<std::string>();
            else throw ParseError(origin + ": unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (c.mapping_mode != "whole-vocab" && c.mapping_mode != "top-3000") {
        throw ParseError(origin + ": mapping_mode must be 'whole-vocab' or 'top-3000'");
    }
    if (c.objective != "hierarchical-softmax") {
        throw ParseError(origin + ": only the 'hierarchical-softmax' objective is implemented");
    }
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return config_from_json(doc, path.string());
}

void save_config(const PipelineConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << config_to_json(config).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace olens
