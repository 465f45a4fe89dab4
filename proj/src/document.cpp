#include "olens/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "olens/errors.hpp"

namespace olens {

namespace {

namespace fs = std::filesystem;

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ingest_jsonl_file(const fs::path& file, IngestResult& out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) {
            ++out.skipped;
            continue;
        }
        Document doc;
        auto take = [&](const char* key, std::string& dst) {
            auto it = rec.find(key);
            if (it == rec.end() || !it->is_string()) return false;
            dst = it->get<std::string>();
            return true;
        };
        if (!take("id", doc.id) || !take("title", doc.title) ||
            !take("body", doc.body) || !take("outlet", doc.outlet) ||
            blank(doc.body) || doc.outlet.empty()) {
            ++out.skipped;
            continue;
        }
        out.documents.push_back(std::move(doc));
    }
}

void ingest_jsonl(const fs::path& path, IngestResult& out) {
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) ingest_jsonl_file(f, out);
    } else {
        ingest_jsonl_file(path, out);
    }
}

void ingest_plain_dir(const fs::path& root, IngestResult& out) {
    if (!fs::is_directory(root))
        throw IoError("not a directory: " + root.string());
    std::vector<fs::path> outlets;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) outlets.push_back(entry.path());
    std::sort(outlets.begin(), outlets.end());
    for (const auto& outlet_dir : outlets) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(outlet_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".txt")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        const std::string outlet = outlet_dir.filename().string();
        for (const auto& f : files) {
            Document doc;
            doc.id = outlet + "/" + f.stem().string();
            doc.outlet = outlet;
            doc.body = read_file(f);
            if (blank(doc.body)) {
                ++out.skipped;
                continue;
            }
            out.documents.push_back(std::move(doc));
        }
    }
}

}  // namespace

IngestResult ingest(const fs::path& path, IngestFormat format) {
    if (!fs::exists(path)) throw IoError("input path does not exist: " + path.string());
    IngestResult out;
    if (format == IngestFormat::jsonl)
        ingest_jsonl(path, out);
    else
        ingest_plain_dir(path, out);
    return out;
}

std::string document_text(const Document& doc, bool include_title) {
    if (!include_title || doc.title.empty()) return doc.body;
    return doc.title + "\n" + doc.body;
}

}  // namespace olens
