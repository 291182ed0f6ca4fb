#include "deid/embeddings/word_table.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"

namespace deid::embeddings {

WordEmbeddingTable::WordEmbeddingTable(std::size_t dim, std::unordered_map<std::string, Eigen::VectorXd> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw ConfigError("word embedding table is empty");
  unk_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& [word, v] : vectors_) {
    if (static_cast<std::size_t>(v.size()) != dim_)
      throw ConfigError("word vector for \"" + word + "\" has width " + std::to_string(v.size()) + ", expected " +
                        std::to_string(dim_));
    unk_ += v;
  }
  unk_ /= static_cast<double>(vectors_.size());
}

const Eigen::VectorXd& WordEmbeddingTable::lookup(std::string_view token) const {
  if (auto it = vectors_.find(std::string(token)); it != vectors_.end()) return it->second;
  if (auto it = vectors_.find(ascii_lower(token)); it != vectors_.end()) return it->second;
  return unk_;
}

WordEmbeddingTable load_word_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open word embeddings " + path.string());
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t sep = line.find(' ');
    if (sep == std::string::npos || sep == 0)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected \"token f1 ... fd\"");
    const std::string token = line.substr(0, sep);
    values.clear();
    const char* p = line.data() + sep;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad float");
      values.push_back(v);
      p = next;
    }
    if (dim == 0) dim = values.size();
    if (values.size() != dim || dim == 0)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                       " values, found " + std::to_string(values.size()));
    if (!vectors.count(token)) vectors.emplace(token, Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(dim)));
  }
  if (vectors.empty()) throw ParseError(path.string() + ": no word vectors");
  return WordEmbeddingTable(dim, std::move(vectors));
}

void write_word_embeddings(const std::filesystem::path& path, const std::map<std::string, std::vector<double>>& vectors) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  char buf[64];
  for (const auto& [word, v] : vectors) {
    out << word;
    for (double x : v) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(end - buf));
    }
    out << '\n';
  }
}

}  // namespace deid::embeddings
