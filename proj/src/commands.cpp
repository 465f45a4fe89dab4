#include "olens/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "olens/align.hpp"
#include "olens/analysis.hpp"
#include "olens/config.hpp"
#include "olens/document.hpp"
#include "olens/errors.hpp"
#include "olens/eval.hpp"
#include "olens/format.hpp"
#include "olens/huffman.hpp"
#include "olens/phrases.hpp"
#include "olens/stats.hpp"
#include "olens/store.hpp"
#include "olens/synthetic.hpp"
#include "olens/text.hpp"
#include "olens/train.hpp"
#include "olens/vocab.hpp"

namespace olens {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- config

// Config flags shared by every pipeline subcommand; an option only
// overrides the resolved config when it was given on the command line.
struct ConfigCli {
    PipelineConfig v;
    std::string config_path;
    std::string run_dir_flag;

    CLI::Option* config = nullptr;
    CLI::Option* dim = nullptr;
    CLI::Option* window = nullptr;
    CLI::Option* epochs = nullptr;
    CLI::Option* min_count = nullptr;
    CLI::Option* subsample = nullptr;
    CLI::Option* phrase1 = nullptr;
    CLI::Option* phrase2 = nullptr;
    CLI::Option* phrase_min_count = nullptr;
    CLI::Option* mapping_mode = nullptr;
    CLI::Option* cos_threshold = nullptr;
    CLI::Option* adj_threshold = nullptr;
    CLI::Option* close_threshold = nullptr;
    CLI::Option* bucket_size = nullptr;
    CLI::Option* top_n = nullptr;
    CLI::Option* expand_k = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* seeds_path = nullptr;
    CLI::Option* lexicon_path = nullptr;
    CLI::Option* gazetteer_path = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--run-dir", run_dir_flag,
                        "run directory (default $OUTLET_LENS_RUN_DIR or .)");
        config = app->add_option("--config", config_path, "JSON config file");
        dim = app->add_option("--dim", v.dim, "embedding dimension");
        window = app->add_option("--window", v.window, "maximum window half-width");
        epochs = app->add_option("--epochs", v.epochs, "training epochs");
        min_count = app->add_option("--min-count", v.min_count, "vocabulary count floor");
        subsample = app->add_option("--subsample", v.subsample, "subsampling rate t");
        phrase1 = app->add_option("--phrase-threshold1", v.phrase_threshold1,
                                  "collocation score threshold, pass 1");
        phrase2 = app->add_option("--phrase-threshold2", v.phrase_threshold2,
                                  "collocation score threshold, pass 2");
        phrase_min_count = app->add_option("--phrase-min-count", v.phrase_min_count,
                                           "bigram count floor for phrase passes");
        mapping_mode = app->add_option("--mapping-mode", v.mapping_mode,
                                       "mapping training set: whole-vocab | top-3000")
                           ->check(CLI::IsMember({"whole-vocab", "top-3000"}));
        cos_threshold = app->add_option("--cos-threshold", v.cos_threshold,
                                        "distant-word cosine ceiling");
        adj_threshold = app->add_option("--adj-threshold", v.adj_threshold,
                                        "distant-word adjusted-distance floor");
        close_threshold = app->add_option("--close-threshold", v.close_threshold,
                                          "close-word cosine floor (report)");
        bucket_size = app->add_option("--bucket-size", v.bucket_size, "frequency bucket size");
        top_n = app->add_option("--top-n", v.top_n, "top-N size for overlap/classification");
        expand_k = app->add_option("--expand-k", v.expand_k, "neighbors per seed word");
        threads = app->add_option("--threads", v.threads, "trainer threads (1 = deterministic)");
        seed = app->add_option("--seed", v.seed, "RNG seed");
        seeds_path = app->add_option("--seeds", v.seeds_path, "seed lexicon TSV (issue<TAB>word)");
        lexicon_path =
            app->add_option("--lexicon", v.lexicon_path, "external bias lexicon, one word/line");
        gazetteer_path = app->add_option("--gazetteer", v.gazetteer_path,
                                         "name gazetteer for distant-word classification");
    }

    PipelineConfig resolve(const Manifest& manifest) const {
        PipelineConfig cfg;
        if (manifest.config.is_object() && !manifest.config.empty()) {
            cfg = config_from_json(manifest.config, "manifest.json", std::move(cfg));
        }
        if (config->count() > 0) {
            std::ifstream in(config_path);
            if (!in) throw IoError("cannot open " + config_path);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(config_path + ": " + e.what());
            }
            cfg = config_from_json(doc, config_path, std::move(cfg));
        }
        if (dim->count()) cfg.dim = v.dim;
        if (window->count()) cfg.window = v.window;
        if (epochs->count()) cfg.epochs = v.epochs;
        if (min_count->count()) cfg.min_count = v.min_count;
        if (subsample->count()) cfg.subsample = v.subsample;
        if (phrase1->count()) cfg.phrase_threshold1 = v.phrase_threshold1;
        if (phrase2->count()) cfg.phrase_threshold2 = v.phrase_threshold2;
        if (phrase_min_count->count()) cfg.phrase_min_count = v.phrase_min_count;
        if (mapping_mode->count()) cfg.mapping_mode = v.mapping_mode;
        if (cos_threshold->count()) cfg.cos_threshold = v.cos_threshold;
        if (adj_threshold->count()) cfg.adj_threshold = v.adj_threshold;
        if (close_threshold->count()) cfg.close_threshold = v.close_threshold;
        if (bucket_size->count()) cfg.bucket_size = v.bucket_size;
        if (top_n->count()) cfg.top_n = v.top_n;
        if (expand_k->count()) cfg.expand_k = v.expand_k;
        if (threads->count()) cfg.threads = v.threads;
        if (seed->count()) cfg.seed = v.seed;
        if (seeds_path->count()) cfg.seeds_path = v.seeds_path;
        if (lexicon_path->count()) cfg.lexicon_path = v.lexicon_path;
        if (gazetteer_path->count()) cfg.gazetteer_path = v.gazetteer_path;
        return cfg;
    }
};

struct Ctx {
    fs::path run_dir;
    PipelineConfig cfg;
    Manifest manifest;
};

Ctx make_ctx(const ConfigCli& cc) {
    fs::path run_dir;
    if (!cc.run_dir_flag.empty()) {
        run_dir = cc.run_dir_flag;
    } else if (const char* env = std::getenv("OUTLET_LENS_RUN_DIR"); env && *env) {
        run_dir = env;
    } else {
        run_dir = ".";
    }
    fs::create_directories(run_dir);

    Ctx ctx;
    ctx.run_dir = run_dir;
    if (fs::exists(run_dir / "manifest.json")) {
        ctx.manifest = load_manifest(run_dir / "manifest.json");
    }
    ctx.cfg = cc.resolve(ctx.manifest);
    return ctx;
}

void commit(Ctx& ctx) {
    ctx.manifest.config = config_to_json(ctx.cfg);
    save_manifest(ctx.manifest, ctx.run_dir / "manifest.json");
}

// Recorded artifacts are checksum-verified; unrecorded but present files
// are adopted as external inputs; absent ones point at the producing stage.
void require_input(Ctx& ctx, const std::string& rel, const std::string& producer) {
    if (ctx.manifest.checksums.contains(rel)) {
        manifest_verify(ctx.manifest, ctx.run_dir, rel);
        return;
    }
    if (fs::exists(ctx.run_dir / rel)) {
        manifest_record(ctx.manifest, ctx.run_dir, rel, "external");
        return;
    }
    throw MissingArtifactError(rel, "run the '" + producer + "' stage first");
}

// Outlet labels embedded in artifact names like <prefix><outlet><suffix>.
std::vector<std::string> outlets_from(const Ctx& ctx, const std::string& prefix,
                                      const std::string& suffix) {
    std::vector<std::string> outlets;
    for (const auto& [rel, checksum] : ctx.manifest.checksums) {
        (void)checksum;
        if (rel.size() <= prefix.size() + suffix.size()) continue;
        if (rel.compare(0, prefix.size(), prefix) != 0) continue;
        if (rel.compare(rel.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        const std::string mid =
            rel.substr(prefix.size(), rel.size() - prefix.size() - suffix.size());
        if (mid.empty() || mid.find('.') != std::string::npos) continue;
        outlets.push_back(mid);
    }
    return outlets;  // manifest map is ordered, so this is sorted
}

void check_outlet_name(const std::string& outlet) {
    if (outlet.empty()) throw InvalidArgumentError("outlet name must not be empty");
    for (const char c : outlet) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) {
            throw InvalidArgumentError("outlet name '" + outlet +
                                       "' may only contain letters, digits, '_' and '-'");
        }
    }
}

std::vector<TokenSequence> tokenize_documents(const std::vector<Document>& docs,
                                              const PipelineConfig& cfg) {
    TokenizerOptions opt;
    opt.min_len = static_cast<std::size_t>(cfg.min_token_len);
    opt.max_len = static_cast<std::size_t>(cfg.max_token_len);

    std::vector<TokenSequence> seqs;
    for (const Document& doc : docs) {
        const std::string text = document_text(doc, cfg.include_titles);
        if (cfg.whole_article) {
            TokenSequence seq = tokenize(text, opt);
            if (!seq.empty()) seqs.push_back(std::move(seq));
            continue;
        }
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            const bool boundary =
                i == text.size() || text[i] == '.' || text[i] == '!' || text[i] == '?';
            if (!boundary) continue;
            if (i > start) {
                TokenSequence seq = tokenize(std::string_view(text).substr(start, i - start), opt);
                if (!seq.empty()) seqs.push_back(std::move(seq));
            }
            start = i + 1;
        }
    }
    return seqs;
}

std::uint64_t token_count(const std::vector<TokenSequence>& docs) {
    std::uint64_t n = 0;
    for (const TokenSequence& d : docs) n += d.size();
    return n;
}

// ---------------------------------------------------------------- stages

void stage_preprocess(Ctx& ctx, const fs::path& input, IngestFormat format,
                      const std::string& outlet) {
    check_outlet_name(outlet);
    const IngestResult ingested = ingest(input, format);
    const std::vector<TokenSequence> seqs = tokenize_documents(ingested.documents, ctx.cfg);
    const std::string rel = "corpus." + outlet + ".tok";
    save_corpus(seqs, ctx.run_dir / rel);
    manifest_record(ctx.manifest, ctx.run_dir, rel, "preprocess");
    commit(ctx);
    std::cout << "preprocess[" << outlet << "]: " << ingested.documents.size() << " documents ("
              << ingested.skipped << " skipped), " << seqs.size() << " sequences, "
              << token_count(seqs) << " tokens -> " << rel << "\n";
}

void stage_phrases(Ctx& ctx, int pass) {
    const std::string in_suffix = pass == 1 ? ".tok" : ".pass1.tok";
    const std::string producer = pass == 1 ? "preprocess" : "phrases --pass 1";
    const std::vector<std::string> outlets = outlets_from(ctx, "corpus.", in_suffix);
    if (outlets.empty()) {
        throw MissingArtifactError("corpus.<outlet>" + in_suffix,
                                   "run the '" + producer + "' stage first");
    }

    std::vector<std::vector<TokenSequence>> per_outlet;
    std::vector<TokenSequence> all;
    for (const std::string& outlet : outlets) {
        const std::string rel = "corpus." + outlet + in_suffix;
        require_input(ctx, rel, producer);
        per_outlet.push_back(load_corpus(ctx.run_dir / rel));
        all.insert(all.end(), per_outlet.back().begin(), per_outlet.back().end());
    }

    const double threshold = pass == 1 ? ctx.cfg.phrase_threshold1 : ctx.cfg.phrase_threshold2;
    const PhraseTable table =
        detect_phrases(all, threshold, ctx.cfg.phrase_min_count, ctx.cfg.threads);

    const std::string table_rel = "phrases.pass" + std::to_string(pass) + ".tsv";
    save_phrases(table, ctx.run_dir / table_rel);
    manifest_record(ctx.manifest, ctx.run_dir, table_rel, "phrases");

    std::cout << "phrases pass " << pass << ": " << table.size() << " collocations >= "
              << format_double(threshold) << " -> " << table_rel << "\n";
    for (std::size_t i = 0; i < outlets.size(); ++i) {
        const std::uint64_t before = token_count(per_outlet[i]);
        for (TokenSequence& doc : per_outlet[i]) doc = apply_phrases(doc, table);
        const std::string rel = "corpus." + outlets[i] + ".pass" + std::to_string(pass) + ".tok";
        save_corpus(per_outlet[i], ctx.run_dir / rel);
        manifest_record(ctx.manifest, ctx.run_dir, rel, "phrases");
        std::cout << "phrases pass " << pass << "[" << outlets[i] << "]: " << before << " -> "
                  << token_count(per_outlet[i]) << " tokens -> " << rel << "\n";
    }
    commit(ctx);
}

void stage_train(Ctx& ctx, const std::string& outlet) {
    check_outlet_name(outlet);
    const std::string rel_in = "corpus." + outlet + ".pass2.tok";
    require_input(ctx, rel_in, "phrases --pass 2");
    const std::vector<TokenSequence> docs = load_corpus(ctx.run_dir / rel_in);

    const Vocabulary vocab = build_vocab(docs, ctx.cfg.min_count);
    const HuffmanTree tree = huffman_build(vocab);
    TrainStats stats;
    const EmbeddingSpace space = train(docs, vocab, tree, ctx.cfg.train_params(), &stats);

    const std::string vocab_rel = "vocab." + outlet + ".tsv";
    const std::string emb_rel = "embeddings." + outlet + ".txt";
    save_vocab(space.vocab, ctx.run_dir / vocab_rel);
    save_embeddings(space, ctx.run_dir / emb_rel);
    manifest_record(ctx.manifest, ctx.run_dir, vocab_rel, "train");
    manifest_record(ctx.manifest, ctx.run_dir, emb_rel, "train");
    commit(ctx);
    std::cout << "train[" << outlet << "]: |V| " << space.vocab.size() << ", "
              << space.vocab.total_tokens << " in-vocab tokens, " << stats.centers
              << " centers, " << stats.pair_updates << " pair updates, final lr "
              << format_double(stats.last_lr) << " -> " << emb_rel << "\n";
}

EmbeddingSpace load_space(Ctx& ctx, const std::string& outlet) {
    const std::string emb_rel = "embeddings." + outlet + ".txt";
    const std::string vocab_rel = "vocab." + outlet + ".tsv";
    require_input(ctx, emb_rel, "train --outlet " + outlet);
    require_input(ctx, vocab_rel, "train --outlet " + outlet);
    EmbeddingSpace space = load_embeddings(ctx.run_dir / emb_rel);
    attach_counts(space, load_vocab(ctx.run_dir / vocab_rel));
    return space;
}

std::pair<std::string, std::string> resolve_outlets(const Ctx& ctx, std::string src,
                                                    std::string tgt) {
    if (!src.empty() && !tgt.empty()) return {std::move(src), std::move(tgt)};
    const std::vector<std::string> trained = outlets_from(ctx, "embeddings.", ".txt");
    if (trained.size() != 2) {
        throw InvalidArgumentError("found " + std::to_string(trained.size()) +
                                   " trained outlets; pass --src and --tgt explicitly");
    }
    if (src.empty() && tgt.empty()) return {trained[0], trained[1]};
    if (src.empty()) src = trained[0] == tgt ? trained[1] : trained[0];
    if (tgt.empty()) tgt = trained[0] == src ? trained[1] : trained[0];
    return {std::move(src), std::move(tgt)};
}

std::vector<std::string> mapping_train_words(const Ctx& ctx, const CommonVocabulary& common) {
    std::size_t n = common.size();
    if (ctx.cfg.mapping_mode == "top-3000") {
        if (common.size() < 3000) {
            std::cerr << "warning: top-3000 mapping requested but the common vocabulary has only "
                      << common.size() << " words; using all of them\n";
        }
        n = std::min<std::size_t>(3000, common.size());
    }
    std::vector<std::string> words;
    words.reserve(n);
    for (std::size_t i = 0; i < n; ++i) words.push_back(common.words[i].word);
    return words;
}

void stage_align(Ctx& ctx, const std::string& src_flag, const std::string& tgt_flag) {
    const auto [src, tgt] = resolve_outlets(ctx, src_flag, tgt_flag);
    const EmbeddingSpace src_space = load_space(ctx, src);
    const EmbeddingSpace tgt_space = load_space(ctx, tgt);

    const CommonVocabulary common = common_vocab(src_space, tgt_space);
    const std::vector<std::string> words = mapping_train_words(ctx, common);
    AlignmentMatrix m = learn_mapping(src_space, tgt_space, words);
    m.trained_on = ctx.cfg.mapping_mode;
    m.source = src;
    m.target = tgt;

    save_mapping(m, ctx.run_dir / "mapping.txt");
    manifest_record(ctx.manifest, ctx.run_dir, "mapping.txt", "align");
    commit(ctx);
    std::cout << "align[" << src << "->" << tgt << "]: common vocab " << common.size() << ", "
              << ctx.cfg.mapping_mode << " (" << words.size() << " training words), residual "
              << format_double(mapping_residual(m, src_space, tgt_space, words)) << " -> "
              << "mapping.txt\n";
}

void write_tsv(Ctx& ctx, const std::string& rel, const std::string& body,
               const std::string& stage) {
    const fs::path path = ctx.run_dir / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << body;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    manifest_record(ctx.manifest, ctx.run_dir, rel, stage);
}

void stage_analyze(Ctx& ctx, const std::string& src_flag, const std::string& tgt_flag) {
    const auto [src, tgt] = resolve_outlets(ctx, src_flag, tgt_flag);
    const EmbeddingSpace src_space = load_space(ctx, src);
    const EmbeddingSpace tgt_space = load_space(ctx, tgt);
    require_input(ctx, "mapping.txt", "align");
    const AlignmentMatrix mapping = load_mapping(ctx.run_dir / "mapping.txt");
    if (mapping.dim != src_space.dim() || mapping.dim != tgt_space.dim()) {
        throw InvalidArgumentError("mapping dimension " + std::to_string(mapping.dim) +
                                   " does not match the embedding spaces");
    }

    const CommonVocabulary common = common_vocab(src_space, tgt_space);
    std::vector<SimilarityRecord> records = map_and_score(src_space, tgt_space, mapping, common);
    bucketize(records, ctx.cfg.bucket_size);
    save_similarity(records, ctx.run_dir / "similarity.tsv");
    manifest_record(ctx.manifest, ctx.run_dir, "similarity.tsv", "analyze");

    std::vector<double> cosines;
    cosines.reserve(records.size());
    for (const SimilarityRecord& r : records) cosines.push_back(r.cosine);
    std::cout << "analyze[" << src << "->" << tgt << "]: " << records.size()
              << " common words, median cosine " << format_double(median(cosines))
              << " -> similarity.tsv\n";

    SeedLexicon seeds;
    if (!ctx.cfg.seeds_path.empty()) {
        seeds = load_seed_lexicon(ctx.cfg.seeds_path);
        const auto expand_into = [&](const EmbeddingSpace& space, const std::string& outlet) {
            const ExpansionReport report = expand_seeds(space, seeds, ctx.cfg.expand_k);
            std::string body;
            for (const std::string& oov : report.skipped) body += "# oov " + oov + "\n";
            for (const SeedExpansion& e : report.expansions) {
                for (std::size_t i = 0; i < e.neighbors.size(); ++i) {
                    body += e.seed + "\t" + std::to_string(i + 1) + "\t" + e.neighbors[i].first +
                            "\t" + format_double(e.neighbors[i].second) + "\n";
                }
            }
            write_tsv(ctx, "expansion." + outlet + ".tsv", body, "analyze");
            std::cout << "analyze: expanded " << report.expansions.size() << " seeds ("
                      << report.skipped.size() << " oov) -> expansion." << outlet << ".tsv\n";
        };
        expand_into(src_space, src);
        expand_into(tgt_space, tgt);
    }

    if (!ctx.cfg.lexicon_path.empty() || !ctx.cfg.seeds_path.empty()) {
        std::string body;
        const auto add_group = [&](const std::string& name,
                                   const std::unordered_set<std::string>& group) {
            const GroupStats gs = group_stats(records, group);
            body += name + "\t" + std::to_string(gs.n_found) + "\t" +
                    format_double(gs.median_cosine) + "\t" + format_double(gs.median_adjusted) +
                    "\n";
        };
        std::unordered_set<std::string> all;
        for (const SimilarityRecord& r : records) all.insert(r.word);
        add_group("all", all);
        if (!ctx.cfg.seeds_path.empty()) {
            std::unordered_set<std::string> seed_words;
            for (const auto& e : seeds.entries) seed_words.insert(e.word);
            add_group("seeds", seed_words);
        }
        if (!ctx.cfg.lexicon_path.empty()) {
            add_group("lexicon", load_word_list(ctx.cfg.lexicon_path));
        }
        write_tsv(ctx, "groups.tsv", body, "analyze");
        std::cout << "analyze: group medians -> groups.tsv\n";
    }
    commit(ctx);
}

void stage_eval(Ctx& ctx, const std::string& outlet, const std::string& wordsim,
                const std::string& men, const std::string& analogy) {
    check_outlet_name(outlet);
    if (wordsim.empty() && men.empty() && analogy.empty()) {
        throw InvalidArgumentError("eval needs at least one of --wordsim, --men, --analogy");
    }
    const std::string emb_rel = "embeddings." + outlet + ".txt";
    require_input(ctx, emb_rel, "train --outlet " + outlet);
    const EmbeddingSpace space = load_embeddings(ctx.run_dir / emb_rel);

    std::string body;
    if (!wordsim.empty()) {
        const SimilarityDataset ds = load_similarity_tsv(wordsim, "wordsim353", {0.0, 10.0});
        body += similarity_result_tsv(ds.name, spearman_eval(space, ds));
    }
    if (!men.empty()) {
        const SimilarityDataset ds = load_men(men);
        body += similarity_result_tsv(ds.name, spearman_eval(space, ds));
    }
    if (!analogy.empty()) {
        const AnalogyDataset ds = load_google_analogies(analogy);
        body += analogy_result_tsv(ds.name, analogy_eval(space, ds, ctx.cfg.threads));
    }
    write_tsv(ctx, "eval." + outlet + ".tsv", body, "eval");
    commit(ctx);
    std::cout << body;
    std::cout << "eval[" << outlet << "] -> eval." << outlet << ".tsv\n";
}

std::string similarity_rows(const std::vector<SimilarityRecord>& records) {
    std::string body;
    for (const SimilarityRecord& r : records) {
        body += r.word + "\t" + format_double(r.cosine) + "\t" + format_double(r.adjusted) + "\t" +
                std::to_string(r.freq_src) + "\t" + std::to_string(r.freq_tgt) + "\t" +
                std::to_string(r.bucket_id) + "\n";
    }
    return body;
}

std::string histogram_tsv(const std::vector<double>& values, double lo, double hi,
                          std::size_t bins) {
    std::vector<std::uint64_t> counts(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (const double v : values) {
        auto bin = static_cast<std::ptrdiff_t>((v - lo) / width);
        bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++counts[static_cast<std::size_t>(bin)];
    }
    std::string body;
    for (std::size_t i = 0; i < bins; ++i) {
        const double a = lo + static_cast<double>(i) * width;
        const double b = lo + static_cast<double>(i + 1) * width;
        body += format_double(a) + "\t" + format_double(b) + "\t" + std::to_string(counts[i]) +
                "\n";
    }
    return body;
}

void stage_report(Ctx& ctx, const std::string& src_flag, const std::string& tgt_flag) {
    require_input(ctx, "similarity.tsv", "analyze");
    std::vector<SimilarityRecord> records = load_similarity(ctx.run_dir / "similarity.tsv");
    if (records.empty()) {
        throw InsufficientDataError("similarity.tsv holds no records");
    }

    const auto [src, tgt] = resolve_outlets(ctx, src_flag, tgt_flag);
    const EmbeddingSpace src_space = load_space(ctx, src);
    const EmbeddingSpace tgt_space = load_space(ctx, tgt);
    require_input(ctx, "mapping.txt", "align");
    const AlignmentMatrix mapping = load_mapping(ctx.run_dir / "mapping.txt");

    const DistantWords distant =
        distant_words(records, ctx.cfg.cos_threshold, ctx.cfg.adj_threshold, ctx.cfg.top_n);

    std::vector<SimilarityRecord> close;
    for (const SimilarityRecord& r : records) {
        if (r.cosine >= ctx.cfg.close_threshold) close.push_back(r);
    }
    std::sort(close.begin(), close.end(), [](const SimilarityRecord& a, const SimilarityRecord& b) {
        if (a.cosine != b.cosine) return a.cosine > b.cosine;
        return a.word < b.word;
    });

    std::vector<double> cosines;
    std::vector<double> adjusted;
    for (const SimilarityRecord& r : records) {
        cosines.push_back(r.cosine);
        adjusted.push_back(r.adjusted);
    }

    const double n_records = static_cast<double>(records.size());
    std::string summary;
    summary += "common_words\t" + std::to_string(records.size()) + "\n";
    summary += "median_cosine\t" + format_double(median(cosines)) + "\n";
    summary += "median_adjusted\t" + format_double(median(adjusted)) + "\n";
    if (records.size() >= 3) {
        summary += "corr_cosine_freq_src\t" +
                   format_double(freq_similarity_correlation(records, FreqSide::src)) + "\n";
        summary += "corr_cosine_freq_tgt\t" +
                   format_double(freq_similarity_correlation(records, FreqSide::tgt)) + "\n";
    }
    summary += "distant_by_cosine\t" + std::to_string(distant.by_cosine.size()) + "\n";
    summary += "distant_by_cosine_frac\t" +
               format_double(static_cast<double>(distant.by_cosine.size()) / n_records) + "\n";
    summary += "distant_by_adjusted\t" + std::to_string(distant.by_adjusted.size()) + "\n";
    summary += "distant_by_adjusted_frac\t" +
               format_double(static_cast<double>(distant.by_adjusted.size()) / n_records) + "\n";
    summary += "close_words\t" + std::to_string(close.size()) + "\n";
    summary += "close_words_frac\t" + format_double(static_cast<double>(close.size()) / n_records) +
               "\n";
    summary += "top_n\t" + std::to_string(distant.top_n) + "\n";
    summary += "new_in_adjusted_top_n\t" + std::to_string(distant.new_in_adjusted) + "\n";
    write_tsv(ctx, "report/summary.tsv", summary, "report");

    write_tsv(ctx, "report/distant_cosine.tsv", similarity_rows(distant.by_cosine), "report");
    write_tsv(ctx, "report/distant_adjusted.tsv", similarity_rows(distant.by_adjusted), "report");
    write_tsv(ctx, "report/close_words.tsv", similarity_rows(close), "report");

    // panel e: bucket medians over frequency rank
    {
        std::map<std::int32_t, std::vector<double>> by_bucket;
        for (const SimilarityRecord& r : records) by_bucket[r.bucket_id].push_back(r.cosine);
        std::string body;
        for (auto& [bucket, vals] : by_bucket) {
            body += std::to_string(bucket) + "\t" + std::to_string(vals.size()) + "\t" +
                    format_double(median(std::move(vals))) + "\n";
        }
        write_tsv(ctx, "report/bucket_medians.tsv", body, "report");
    }

    // panels b/f: cosine and adjusted-distance histograms
    write_tsv(ctx, "report/hist_cosine.tsv", histogram_tsv(cosines, -1.0, 1.0, 40), "report");
    write_tsv(ctx, "report/hist_adjusted.tsv", histogram_tsv(adjusted, -2.0, 2.0, 80), "report");

    // Figure-1-shaped data: the most distant (by adjusted) and closest
    // (by cosine) words, each as source / mapped / target points.
    {
        std::vector<SimilarityRecord> by_adj(records);
        std::sort(by_adj.begin(), by_adj.end(),
                  [](const SimilarityRecord& a, const SimilarityRecord& b) {
                      if (a.adjusted != b.adjusted) return a.adjusted > b.adjusted;
                      return a.word < b.word;
                  });
        std::vector<std::string> picks;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < by_adj.size() && picks.size() < 15; ++i) {
            if (seen.insert(by_adj[i].word).second) picks.push_back(by_adj[i].word);
        }
        const std::size_t n_distant = picks.size();
        for (std::size_t i = 0; i < close.size() && picks.size() < n_distant + 15; ++i) {
            if (seen.insert(close[i].word).second) picks.push_back(close[i].word);
        }

        if (picks.size() >= 2) {
            std::vector<std::vector<double>> points;
            std::vector<std::string> labels;
            std::vector<std::string> series;
            for (const std::string& word : picks) {
                const auto is = src_space.vocab.id_of(word);
                const auto it = tgt_space.vocab.id_of(word);
                if (!is || !it) continue;
                const auto xs = src_space.input.row(static_cast<std::size_t>(*is));
                const auto zt = tgt_space.input.row(static_cast<std::size_t>(*it));
                points.emplace_back(xs.begin(), xs.end());
                labels.push_back(word);
                series.emplace_back("source");
                points.push_back(apply_mapping(mapping, xs));
                labels.push_back(word);
                series.emplace_back("mapped");
                points.emplace_back(zt.begin(), zt.end());
                labels.push_back(word);
                series.emplace_back("target");
            }
            const auto projected = pca_project(points, 2);
            std::string body;
            for (std::size_t i = 0; i < projected.size(); ++i) {
                body += labels[i] + "\t" + format_double(projected[i][0]) + "\t" +
                        format_double(projected[i][1]) + "\t" + series[i] + "\n";
            }
            write_tsv(ctx, "report/figure_pca.tsv", body, "report");
        }
    }

    if (!ctx.cfg.gazetteer_path.empty()) {
        std::vector<SimilarityRecord> by_adj(records);
        std::sort(by_adj.begin(), by_adj.end(),
                  [](const SimilarityRecord& a, const SimilarityRecord& b) {
                      if (a.adjusted != b.adjusted) return a.adjusted > b.adjusted;
                      return a.word < b.word;
                  });
        std::vector<std::string> top;
        for (std::size_t i = 0; i < std::min(ctx.cfg.top_n, by_adj.size()); ++i) {
            top.push_back(by_adj[i].word);
        }
        const DistantBreakdown breakdown =
            classify_distant(top, load_word_list(ctx.cfg.gazetteer_path), ctx.cfg.short_len);
        std::string body;
        body += "name\t" + std::to_string(breakdown.names) + "\n";
        body += "short\t" + std::to_string(breakdown.short_noise) + "\n";
        body += "other\t" + std::to_string(breakdown.other) + "\n";
        body += "other_fraction\t" + format_double(breakdown.other_fraction) + "\n";
        write_tsv(ctx, "report/classified.tsv", body, "report");
    }

    commit(ctx);
    std::cout << "report[" << src << "->" << tgt << "]: " << records.size() << " words, "
              << distant.by_cosine.size() << " distant by cosine, " << distant.by_adjusted.size()
              << " by adjusted, " << close.size() << " close -> report/\n";
}

// ---------------------------------------------------------------- wiring

struct PreprocessArgs {
    std::string input;
    std::string format = "jsonl";
    std::string outlet;
};

struct PipelineArgs {
    std::string input_a;
    std::string input_b;
    std::string outlet_a;
    std::string outlet_b;
    std::string format = "jsonl";
};

IngestFormat parse_format(const std::string& format) {
    return format == "dir" ? IngestFormat::plain_dir : IngestFormat::jsonl;
}

std::string default_outlet(const std::string& flag, const fs::path& input) {
    if (!flag.empty()) return flag;
    return input.stem().string();
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"outlet-lens: train, align and compare outlet-specific word embeddings"};
    app.require_subcommand(1);

    int exit_code = 0;
    std::function<void()> action;

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "ingest and tokenize one outlet");
    auto pre_cc = std::make_shared<ConfigCli>();
    auto pre_args = std::make_shared<PreprocessArgs>();
    preprocess->add_option("--input", pre_args->input, "articles (JSONL file/dir or text dir)")
        ->required();
    preprocess->add_option("--format", pre_args->format, "jsonl | dir")
        ->check(CLI::IsMember({"jsonl", "dir"}));
    preprocess->add_option("--outlet", pre_args->outlet, "outlet label")->required();
    pre_cc->attach(preprocess);
    preprocess->callback([&, pre_cc, pre_args] {
        action = [&, pre_cc, pre_args] {
            Ctx ctx = make_ctx(*pre_cc);
            stage_preprocess(ctx, pre_args->input, parse_format(pre_args->format),
                             pre_args->outlet);
        };
    });

    // phrases
    auto* phrases = app.add_subcommand("phrases", "detect and apply collocation passes");
    auto phr_cc = std::make_shared<ConfigCli>();
    auto phr_pass = std::make_shared<int>(0);
    phrases->add_option("--pass", *phr_pass, "1 or 2 (default: both)")
        ->check(CLI::IsMember({0, 1, 2}));
    phr_cc->attach(phrases);
    phrases->callback([&, phr_cc, phr_pass] {
        action = [&, phr_cc, phr_pass] {
            Ctx ctx = make_ctx(*phr_cc);
            if (*phr_pass == 0 || *phr_pass == 1) stage_phrases(ctx, 1);
            if (*phr_pass == 0 || *phr_pass == 2) stage_phrases(ctx, 2);
        };
    });

    // train
    auto* train_cmd = app.add_subcommand("train", "train one outlet's embedding space");
    auto train_cc = std::make_shared<ConfigCli>();
    auto train_outlet = std::make_shared<std::string>();
    train_cmd->add_option("--outlet", *train_outlet, "outlet label")->required();
    train_cc->attach(train_cmd);
    train_cmd->callback([&, train_cc, train_outlet] {
        action = [&, train_cc, train_outlet] {
            Ctx ctx = make_ctx(*train_cc);
            stage_train(ctx, *train_outlet);
        };
    });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "intrinsic evaluation of a trained space");
    auto eval_cc = std::make_shared<ConfigCli>();
    auto eval_outlet = std::make_shared<std::string>();
    auto eval_wordsim = std::make_shared<std::string>();
    auto eval_men = std::make_shared<std::string>();
    auto eval_analogy = std::make_shared<std::string>();
    eval_cmd->add_option("--outlet", *eval_outlet, "outlet label")->required();
    eval_cmd->add_option("--wordsim", *eval_wordsim, "WordSim-353 TSV");
    eval_cmd->add_option("--men", *eval_men, "MEN triples");
    eval_cmd->add_option("--analogy", *eval_analogy, "Google analogy set");
    eval_cc->attach(eval_cmd);
    eval_cmd->callback([&, eval_cc, eval_outlet, eval_wordsim, eval_men, eval_analogy] {
        action = [&, eval_cc, eval_outlet, eval_wordsim, eval_men, eval_analogy] {
            Ctx ctx = make_ctx(*eval_cc);
            stage_eval(ctx, *eval_outlet, *eval_wordsim, *eval_men, *eval_analogy);
        };
    });

    // align
    auto* align_cmd = app.add_subcommand("align", "learn the source->target linear map");
    auto align_cc = std::make_shared<ConfigCli>();
    auto align_src = std::make_shared<std::string>();
    auto align_tgt = std::make_shared<std::string>();
    align_cmd->add_option("--src", *align_src, "source outlet");
    align_cmd->add_option("--tgt", *align_tgt, "target outlet");
    align_cc->attach(align_cmd);
    align_cmd->callback([&, align_cc, align_src, align_tgt] {
        action = [&, align_cc, align_src, align_tgt] {
            Ctx ctx = make_ctx(*align_cc);
            stage_align(ctx, *align_src, *align_tgt);
        };
    });

    // analyze
    auto* analyze_cmd =
        app.add_subcommand("analyze", "score the common vocabulary and expand seeds");
    auto an_cc = std::make_shared<ConfigCli>();
    auto an_src = std::make_shared<std::string>();
    auto an_tgt = std::make_shared<std::string>();
    analyze_cmd->add_option("--src", *an_src, "source outlet");
    analyze_cmd->add_option("--tgt", *an_tgt, "target outlet");
    an_cc->attach(analyze_cmd);
    analyze_cmd->callback([&, an_cc, an_src, an_tgt] {
        action = [&, an_cc, an_src, an_tgt] {
            Ctx ctx = make_ctx(*an_cc);
            stage_analyze(ctx, *an_src, *an_tgt);
        };
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "emit summary and plot-data TSVs");
    auto rep_cc = std::make_shared<ConfigCli>();
    auto rep_src = std::make_shared<std::string>();
    auto rep_tgt = std::make_shared<std::string>();
    report_cmd->add_option("--src", *rep_src, "source outlet");
    report_cmd->add_option("--tgt", *rep_tgt, "target outlet");
    rep_cc->attach(report_cmd);
    report_cmd->callback([&, rep_cc, rep_src, rep_tgt] {
        action = [&, rep_cc, rep_src, rep_tgt] {
            Ctx ctx = make_ctx(*rep_cc);
            stage_report(ctx, *rep_src, *rep_tgt);
        };
    });

    // pipeline
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run every stage end to end");
    auto pipe_cc = std::make_shared<ConfigCli>();
    auto pipe_args = std::make_shared<PipelineArgs>();
    pipeline_cmd->add_option("--input-a", pipe_args->input_a, "first outlet's articles")
        ->required();
    pipeline_cmd->add_option("--input-b", pipe_args->input_b, "second outlet's articles")
        ->required();
    pipeline_cmd->add_option("--outlet-a", pipe_args->outlet_a, "label (default: file stem)");
    pipeline_cmd->add_option("--outlet-b", pipe_args->outlet_b, "label (default: file stem)");
    pipeline_cmd->add_option("--format", pipe_args->format, "jsonl | dir")
        ->check(CLI::IsMember({"jsonl", "dir"}));
    pipe_cc->attach(pipeline_cmd);
    pipeline_cmd->callback([&, pipe_cc, pipe_args] {
        action = [&, pipe_cc, pipe_args] {
            const std::string a = default_outlet(pipe_args->outlet_a, pipe_args->input_a);
            const std::string b = default_outlet(pipe_args->outlet_b, pipe_args->input_b);
            if (a == b) {
                throw InvalidArgumentError("the two outlets resolve to the same label '" + a +
                                           "'; pass --outlet-a/--outlet-b");
            }
            Ctx ctx = make_ctx(*pipe_cc);
            const IngestFormat format = parse_format(pipe_args->format);
            stage_preprocess(ctx, pipe_args->input_a, format, a);
            stage_preprocess(ctx, pipe_args->input_b, format, b);
            stage_phrases(ctx, 1);
            stage_phrases(ctx, 2);
            stage_train(ctx, a);
            stage_train(ctx, b);
            stage_align(ctx, a, b);
            stage_analyze(ctx, a, b);
            stage_report(ctx, a, b);
        };
    });

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate the two-outlet synthetic corpus");
    auto synth_out = std::make_shared<std::string>();
    auto synth_params = std::make_shared<SyntheticParams>();
    synth_cmd->add_option("--out", *synth_out, "output directory")->required();
    synth_cmd->add_option("--docs", synth_params->docs_per_outlet, "documents per outlet");
    synth_cmd->add_option("--doc-len", synth_params->doc_len, "body tokens per document");
    synth_cmd->add_option("--topics", synth_params->topics, "topic count");
    synth_cmd->add_option("--words-per-topic", synth_params->words_per_topic, "words per topic");
    synth_cmd->add_option("--stopwords", synth_params->stopwords, "shared stopword count");
    synth_cmd->add_option("--planted", synth_params->planted, "planted context-divergent words");
    synth_cmd->add_option("--planted-prob", synth_params->planted_prob,
                          "planted-word rate inside its topic");
    synth_cmd->add_option("--quad-prob", synth_params->quad_prob, "collocation-run rate");
    synth_cmd->add_option("--stop-prob", synth_params->stop_prob, "stopword rate");
    synth_cmd->add_option("--seed", synth_params->seed, "generator seed");
    synth_cmd->callback([&, synth_out, synth_params] {
        action = [&, synth_out, synth_params] {
            const SyntheticCorpus corpus = generate_synthetic(*synth_params);
            write_synthetic(corpus, *synth_out);
            std::cout << "synth: " << corpus.docs_a.size() << " + " << corpus.docs_b.size()
                      << " documents, " << corpus.planted_words.size() << " planted words -> "
                      << *synth_out << "\n";
        };
    });

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("outlet-lens");
    for (const std::string& a : args) argv_storage.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (action) action();
        return exit_code;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const MissingArtifactError& e) {
        std::cerr << "error[missing]: " << e.what() << "\n";
        return 3;
    } catch (const StaleArtifactError& e) {
        std::cerr << "error[stale]: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error[parse]: " << e.what() << "\n";
        return 5;
    } catch (const IoError& e) {
        std::cerr << "error[missing]: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArgumentError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace olens
