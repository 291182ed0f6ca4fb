#include "deid/train/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"
#include "deid/corpus/synth.hpp"

namespace deid::train {

bool GradCheckReport::passed() const {
  return std::all_of(tensors.begin(), tensors.end(), [](const TensorCheck& t) { return t.passed; });
}

nlohmann::json to_json(const GradCheckReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : report.tensors)
    rows.push_back({{"tensor", t.name},
                    {"size", t.size},
                    {"max_abs_error", t.max_abs_error},
                    {"relative_error", t.relative_error},
                    {"passed", t.passed}});
  return {{"tensors", rows}, {"passed", report.passed()}};
}

namespace {

double total_nll(const ModelParams& model, const std::vector<SentenceFeatures>& sentences,
                 const std::vector<network::VariationalMasks>& masks, ModelParams* grads) {
  double sum = 0.0;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    sum += sentence_nll(model, sentences[i], masks.empty() ? nullptr : &masks[i], grads);
  return sum;
}

}  // namespace

GradCheckReport grad_check(const ModelParams& model, const std::vector<SentenceFeatures>& sentences, double epsilon,
                           double threshold, const std::vector<network::VariationalMasks>& masks) {
  require(masks.empty() || masks.size() == sentences.size(), "grad_check: one mask set per sentence");
  ModelParams analytic = zeros_like(model);
  total_nll(model, sentences, masks, &analytic);

  ModelParams probe = model;
  const auto probe_tensors = named_tensors(probe);
  const auto analytic_tensors = named_tensors(analytic);
  GradCheckReport report;
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    Eigen::MatrixXd& theta = *probe_tensors[k].value;
    const Eigen::MatrixXd& a = *analytic_tensors[k].value;
    Eigen::MatrixXd numeric(theta.rows(), theta.cols());
    for (Eigen::Index c = 0; c < theta.cols(); ++c) {
      for (Eigen::Index r = 0; r < theta.rows(); ++r) {
        const double saved = theta(r, c);
        theta(r, c) = saved + epsilon;
        const double up = total_nll(probe, sentences, masks, nullptr);
        theta(r, c) = saved - epsilon;
        const double down = total_nll(probe, sentences, masks, nullptr);
        theta(r, c) = saved;
        numeric(r, c) = (up - down) / (2.0 * epsilon);
      }
    }
    TensorCheck t;
    t.name = probe_tensors[k].name;
    t.size = static_cast<std::size_t>(theta.size());
    if (theta.size() > 0) {
      t.max_abs_error = (a - numeric).cwiseAbs().maxCoeff();
      const double scale = std::max(a.cwiseAbs().maxCoeff(), numeric.cwiseAbs().maxCoeff());
      t.relative_error = scale > 0.0 ? t.max_abs_error / scale : 0.0;
    }
    t.passed = t.relative_error < threshold;
    report.tensors.push_back(std::move(t));
  }
  return report;
}

ToyProblem make_toy_problem(std::uint64_t seed, bool bio_constraints) {
  corpus::SynthConfig sc;
  sc.documents = 1;
  sc.sentences_per_document = 2;
  sc.densities = {{corpus::PhiType::Patient, 1.0}};
  auto docs = corpus::generate_synthetic(sc, seed);

  ToyProblem toy;
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  for (const auto& w : corpus::synthetic_vocabulary(docs)) {
    const auto v = corpus::synthetic_word_vector(w, 4, seed);
    vectors.emplace(w, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  toy.words = std::make_unique<embeddings::WordEmbeddingTable>(4, std::move(vectors));
  toy.contextual = std::make_unique<embeddings::ContextualStore>(embeddings::pseudo_contextual(
      docs, 3, [&](std::string_view w) { return corpus::synthetic_word_vector(ascii_lower(w), 3, seed); }));
  const EmbeddingSources sources{toy.words.get(), toy.contextual.get()};

  TrainConfig config;
  config.seed = seed;
  config.hidden = 4;
  config.char_hidden = 3;
  config.char_dim = 4;
  config.casing_dim = 3;
  config.dropout = 0.0;
  config.bio_constraints = bio_constraints;
  const auto layout = layout_for(config, sources);
  Rng rng = make_stream(seed, "init");
  toy.model = init_model(config, layout, embeddings::CharVocab::build(docs), tag_set_for(docs), rng);
  std::normal_distribution<double> n(0.0, 0.5);
  for (Eigen::Index i = 0; i < toy.model.crf.transitions.size(); ++i)
    if (toy.model.crf.transitions(i) != crf::kForbidden) toy.model.crf.transitions(i) = n(rng);
  for (Eigen::Index i = 0; i < toy.model.crf.start.size(); ++i) {
    if (toy.model.crf.start(i) != crf::kForbidden) toy.model.crf.start(i) = n(rng);
    toy.model.crf.end(i) = n(rng);
  }
  for (const auto& d : docs) {
    auto f = featurize(d, layout, sources, &toy.model.tags);
    std::move(f.begin(), f.end(), std::back_inserter(toy.sentences));
  }
  toy.sentences.resize(std::min<std::size_t>(toy.sentences.size(), 2));
  return toy;
}

}  // namespace deid::train
