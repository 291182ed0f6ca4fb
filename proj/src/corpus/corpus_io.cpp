#include "deid/corpus/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"

namespace deid::corpus {

namespace fs = std::filesystem;

namespace {

std::size_t line_of(std::string_view contents, std::size_t byte) {
  byte = std::min(byte, contents.size());
  return 1 + static_cast<std::size_t>(std::count(contents.begin(), contents.begin() + static_cast<long>(byte), '\n'));
}

std::string extension_for(CorpusFormat f) {
  switch (f) {
    case CorpusFormat::NativeJson: return ".json";
    case CorpusFormat::I2b2Xml: return ".xml";
    case CorpusFormat::PlainText: return ".txt";
  }
  return "";
}

Document load_native(const fs::path& file) {
  const std::string contents = read_file(file);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(contents);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(file.string() + ":" + std::to_string(line_of(contents, e.byte)) + ": " + e.what());
  }
  return document_from_json(j, file.string());
}

Document load_i2b2(const fs::path& file) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(read_file(file));
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(file.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  if (tree.empty()) throw ParseError(file.string() + ":1: empty XML document");
  const pt::ptree& root = tree.begin()->second;
  const auto text_node = root.get_child_optional("TEXT");
  if (!text_node) throw ParseError(file.string() + ": missing TEXT element");
  std::u32string text = utf8_decode(text_node->data());

  std::vector<Span> spans;
  if (const auto tags = root.get_child_optional("TAGS")) {
    for (const auto& [name, node] : *tags) {
      if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
      const auto attrs = node.get_child_optional("<xmlattr>");
      if (!attrs) throw ParseError(file.string() + ": tag <" + name + "> has no attributes");
      const std::string type_str = attrs->get<std::string>("TYPE", "");
      const auto type = phi_type_from_i2b2(type_str);
      if (!type) throw ParseError(file.string() + ": unknown TYPE \"" + type_str + "\" on <" + name + ">");
      Span s;
      try {
        s.start = attrs->get<std::size_t>("start");
        s.end = attrs->get<std::size_t>("end");
      } catch (const pt::ptree_error& e) {
        throw ParseError(file.string() + ": <" + name + "> start/end: " + e.what());
      }
      s.type = *type;
      s.text = attrs->get<std::string>("text", "");
      spans.push_back(std::move(s));
    }
  }
  return make_document(file.stem().string(), std::move(text), std::move(spans));
}

Document load_plain(const fs::path& file) {
  return make_document(file.stem().string(), utf8_decode(read_file(file)), {});
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view s) {
  if (s == "native-json") return CorpusFormat::NativeJson;
  if (s == "i2b2-xml") return CorpusFormat::I2b2Xml;
  if (s == "plain-text") return CorpusFormat::PlainText;
  throw ConfigError("unknown corpus format \"" + std::string(s) + "\"");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << contents;
}

nlohmann::json document_to_json(const Document& doc) { return document_to_json(doc, doc.spans); }

nlohmann::json document_to_json(const Document& doc, const std::vector<Span>& spans) {
  nlohmann::json j;
  j["doc_id"] = doc.doc_id;
  j["text"] = utf8_encode(doc.text);
  j["spans"] = nlohmann::json::array();
  for (const Span& s : spans)
    j["spans"].push_back({{"start", s.start}, {"end", s.end}, {"type", to_string(s.type)}, {"text", s.text}});
  return j;
}

Document document_from_json(const nlohmann::json& j, const std::string& origin) {
  try {
    std::vector<Span> spans;
    if (j.contains("spans")) {
      for (const auto& js : j.at("spans")) {
        Span s;
        s.start = js.at("start").get<std::size_t>();
        s.end = js.at("end").get<std::size_t>();
        const std::string type_str = js.at("type").get<std::string>();
        const auto type = parse_phi_type(type_str);
        if (!type) throw ParseError(origin + ": unknown span type \"" + type_str + "\"");
        s.type = *type;
        if (js.contains("text")) s.text = js.at("text").get<std::string>();
        spans.push_back(std::move(s));
      }
    }
    return make_document(j.at("doc_id").get<std::string>(), utf8_decode(j.at("text").get<std::string>()),
                         std::move(spans));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::vector<Document> load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw ParseError("no such file or directory: " + path.string());
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == extension_for(format)) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    switch (format) {
      case CorpusFormat::NativeJson: docs.push_back(load_native(f)); break;
      case CorpusFormat::I2b2Xml: docs.push_back(load_i2b2(f)); break;
      case CorpusFormat::PlainText: docs.push_back(load_plain(f)); break;
    }
  }
  return docs;
}

void save_document(const Document& doc, const fs::path& file) { write_file(file, document_to_json(doc).dump(1) + "\n"); }

void save_corpus(const std::vector<Document>& docs, const fs::path& dir) {
  fs::create_directories(dir);
  for (const Document& d : docs) save_document(d, dir / (d.doc_id + ".json"));
}

}  // namespace deid::corpus
