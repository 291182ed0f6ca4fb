#include "deid/embeddings/contextual.hpp"

#include <fstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "deid/common/error.hpp"

namespace deid::embeddings {

void ContextualStore::insert(const std::string& doc, std::size_t sentence, std::size_t token, Eigen::VectorXd v) {
  if (static_cast<std::size_t>(v.size()) != dim_)
    throw ConfigError("contextual vector (" + doc + "," + std::to_string(sentence) + "," + std::to_string(token) +
                      ") has width " + std::to_string(v.size()) + ", expected " + std::to_string(dim_));
  vectors_[{doc, sentence, token}] = std::move(v);
}

Eigen::VectorXd ContextualStore::get(const std::string& doc, std::size_t sentence, std::size_t token) const {
  if (auto it = vectors_.find({doc, sentence, token}); it != vectors_.end()) return it->second;
  if (missing_.fetch_add(1) == 0)
    spdlog::warn("no contextual vector for ({}, {}, {}); using zeros", doc, sentence, token);
  return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
}

ContextualStore load_contextual(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open contextual vectors " + path.string());
  ContextualStore store;
  bool first = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto& arr = j.at("v");
      Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
      for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
      if (first) {
        store = ContextualStore(arr.size());
        first = false;
      }
      store.insert(j.at("doc").get<std::string>(), j.at("s").get<std::size_t>(), j.at("t").get<std::size_t>(),
                   std::move(v));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (first) throw ParseError(path.string() + ": no contextual vectors");
  return store;
}

void write_contextual(const ContextualStore& store, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  for (const auto& [key, v] : store.entries()) {
    nlohmann::json j;
    j["doc"] = std::get<0>(key);
    j["s"] = std::get<1>(key);
    j["t"] = std::get<2>(key);
    j["v"] = std::vector<double>(v.data(), v.data() + v.size());
    out << j.dump() << '\n';
  }
}

ContextualStore pseudo_contextual(const std::vector<corpus::Document>& docs, std::size_t dim,
                                  const std::function<std::vector<double>(std::string_view)>& word_vector) {
  ContextualStore store(dim);
  auto vec = [&](std::string_view w) {
    const std::vector<double> v = word_vector(w);
    require(v.size() == dim, "pseudo_contextual: word_vector returned the wrong width");
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(dim)).eval();
  };
  for (const auto& doc : docs) {
    for (std::size_t j = 0; j < doc.sentences.size(); ++j) {
      const auto& s = doc.sentences[j];
      std::vector<Eigen::VectorXd> own;
      own.reserve(s.size());
      for (const auto& tok : s) own.push_back(vec(tok.text));
      for (std::size_t k = 0; k < s.size(); ++k) {
        Eigen::VectorXd v = 0.6 * own[k];
        if (k > 0) v += 0.2 * own[k - 1];
        if (k + 1 < s.size()) v += 0.2 * own[k + 1];
        store.insert(doc.doc_id, j, k, std::move(v));
      }
    }
  }
  return store;
}

}  // namespace deid::embeddings
