#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

enum class CorpusFormat { NativeJson, I2b2Xml, PlainText };

CorpusFormat parse_corpus_format(std::string_view s);  // "native-json" | "i2b2-xml" | "plain-text"

/// Loads one file, or every file in a directory with the format's extension
/// (.json / .xml / .txt) in lexicographic order. Throws ParseError (with file and
/// line) or ValidationError (with doc_id and span).
std::vector<Document> load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// {"doc_id", "text", "spans": [{"start", "end", "type", "text"}]}. Offsets are scalar indices.
nlohmann::json document_to_json(const Document& doc);
nlohmann::json document_to_json(const Document& doc, const std::vector<Span>& spans);
Document document_from_json(const nlohmann::json& j, const std::string& origin);

/// Writes one native-json file per document into `dir` as <doc_id>.json.
void save_corpus(const std::vector<Document>& docs, const std::filesystem::path& dir);
void save_document(const Document& doc, const std::filesystem::path& file);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace deid::corpus
