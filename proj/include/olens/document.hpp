#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace olens {

struct Document {
    std::string id;
    std::string title;
    std::string body;
    std::string outlet;
};

enum class IngestFormat { jsonl, plain_dir };

struct IngestResult {
    std::vector<Document> documents;
    std::size_t skipped = 0;  // malformed records dropped
};

// Reads an article collection. JSONL input is one object per line with
// fields id/title/body/outlet; plain-dir input is <root>/<outlet>/<file>.txt.
// Plain-dir documents come out sorted by (outlet, filename); JSONL keeps
// line order. Malformed records are skipped and counted, unreadable paths
// throw IoError.
IngestResult ingest(const std::filesystem::path& path, IngestFormat format);

// Training text of a document: the title prepended as a leading sentence.
std::string document_text(const Document& doc, bool include_title = true);

}  // namespace olens
