#include "deid/train/model.hpp"

#include <algorithm>
#include <set>

#include "deid/common/error.hpp"

namespace deid::train {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

embeddings::InputLayout layout_for(const TrainConfig& config, const EmbeddingSources& sources) {
  embeddings::InputLayout l;
  l.contextual = 0;
  l.word = 0;
  if (config.use_contextual) {
    if (!sources.contextual) throw ConfigError("contextual vectors are enabled but none were loaded");
    l.contextual = sources.contextual->dim();
  }
  if (config.use_word) {
    if (!sources.words) throw ConfigError("word vectors are enabled but none were loaded");
    l.word = sources.words->dim();
  }
  l.character = config.use_char ? 2 * config.char_hidden : 0;
  l.pos = config.use_pos ? corpus::kCoarsePosCount : 0;
  l.casing = config.use_casing ? config.casing_dim : 0;
  return l;
}

ModelParams init_model(const TrainConfig& config, const embeddings::InputLayout& layout, embeddings::CharVocab chars,
                       corpus::TagSet tags, Rng& rng) {
  config.validate();
  ModelParams m;
  m.config = config;
  m.layout = layout;
  m.chars = std::move(chars);
  m.tags = std::move(tags);
  m.char_lstm = config.use_char ? embeddings::CharLstmParams::init(m.chars.size(), config.char_dim, config.char_hidden, rng)
                                : embeddings::CharLstmParams::zeros(0, 0, 0);
  m.features = config.use_casing ? embeddings::FeatureTables::init(config.casing_dim, rng)
                                 : embeddings::FeatureTables{MatrixXd()};
  m.encoder = {network::LstmParams::glorot(layout.total(), config.hidden, rng),
               network::LstmParams::glorot(layout.total(), config.hidden, rng)};
  m.projection = network::ProjectionParams::glorot(2 * config.hidden, m.tags.size(), rng);
  m.crf = crf::CrfParams::zeros(m.tags.size());
  if (config.bio_constraints) crf::apply_bio_constraints(m.crf, m.tags);
  return m;
}

ModelParams zeros_like(const ModelParams& model) {
  ModelParams z = model;
  for (auto& t : named_tensors(z)) t.value->setZero();
  return z;
}

std::vector<NamedTensor> named_tensors(ModelParams& m) {
  std::vector<NamedTensor> out;
  auto lstm = [&](const std::string& prefix, network::LstmParams& p) {
    out.push_back({prefix + ".W", &p.W});
    out.push_back({prefix + ".U", &p.U});
    out.push_back({prefix + ".b", &p.b});
  };
  if (m.config.use_char) {
    out.push_back({"char.table", &m.char_lstm.table});
    lstm("char.forward", m.char_lstm.forward);
    lstm("char.backward", m.char_lstm.backward);
  }
  if (m.config.use_casing) out.push_back({"casing.table", &m.features.casing});
  lstm("encoder.forward", m.encoder.forward);
  lstm("encoder.backward", m.encoder.backward);
  out.push_back({"projection.W", &m.projection.W});
  out.push_back({"projection.b", &m.projection.b});
  out.push_back({"crf.transitions", &m.crf.transitions});
  out.push_back({"crf.start", &m.crf.start});
  out.push_back({"crf.end", &m.crf.end});
  return out;
}

std::vector<SentenceFeatures> featurize(const corpus::Document& doc, const embeddings::InputLayout& layout,
                                        const EmbeddingSources& sources, const corpus::TagSet* tags) {
  std::vector<std::vector<corpus::BioTag>> gold;
  if (tags) {
    std::vector<corpus::Span> known;
    const auto& types = tags->types();
    for (const auto& s : doc.spans)
      if (std::find(types.begin(), types.end(), s.type) != types.end()) known.push_back(s);
    gold = corpus::encode_document(doc, known);
  }
  const Index frozen_rows = static_cast<Index>(layout.contextual + layout.word);
  std::vector<SentenceFeatures> out;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& sentence = doc.sentences[si];
    if (sentence.empty()) continue;
    SentenceFeatures f;
    f.id = doc.doc_id + "#" + std::to_string(si);
    const Index T = static_cast<Index>(sentence.size());
    f.frozen = MatrixXd::Zero(frozen_rows, T);
    f.pos = corpus::pos_tag(sentence);
    for (Index t = 0; t < T; ++t) {
      const auto& tok = sentence[static_cast<std::size_t>(t)];
      f.tokens.push_back(tok.text);
      f.casing.push_back(corpus::casing_feature(tok.text));
      if (layout.contextual > 0) {
        const VectorXd v = sources.contextual->get(doc.doc_id, si, tok.token_index);
        if (static_cast<std::size_t>(v.size()) != layout.contextual)
          throw ConfigError("contextual vectors have width " + std::to_string(v.size()) + ", model expects " +
                            std::to_string(layout.contextual));
        f.frozen.col(t).head(v.size()) = v;
      }
      if (layout.word > 0) {
        const VectorXd& v = sources.words->lookup(tok.text);
        if (static_cast<std::size_t>(v.size()) != layout.word)
          throw ConfigError("word vectors have width " + std::to_string(v.size()) + ", model expects " +
                            std::to_string(layout.word));
        f.frozen.col(t).segment(static_cast<Index>(layout.contextual), v.size()) = v;
      }
      if (tags) f.gold.push_back(tags->index(gold[si][static_cast<std::size_t>(t)]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

network::VariationalMasks draw_masks(const ModelParams& model, std::size_t steps, Rng& rng) {
  network::MaskDims dims;
  dims.input = model.config.input_dropout ? model.layout.total() : 0;
  dims.hidden = model.config.hidden;
  dims.steps = steps;
  return network::sample_masks(model.config.dropout, dims, rng, model.config.dropout_mode);
}

namespace {

MatrixXd build_inputs(const ModelParams& model, const SentenceFeatures& s, ForwardCache* cache) {
  const auto& l = model.layout;
  const Index T = static_cast<Index>(s.tokens.size());
  MatrixXd x(static_cast<Index>(l.total()), T);
  if (cache) cache->chars.assign(s.tokens.size(), {});
  for (Index t = 0; t < T; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    embeddings::InputParts parts;
    parts.contextual = s.frozen.col(t).head(static_cast<Index>(l.contextual));
    parts.word = s.frozen.col(t).segment(static_cast<Index>(l.contextual), static_cast<Index>(l.word));
    if (l.character > 0)
      parts.character = embeddings::char_embed_forward(model.char_lstm, model.chars, s.tokens[ti],
                                                       cache ? &cache->chars[ti] : nullptr);
    if (l.pos > 0) parts.pos = embeddings::pos_one_hot(s.pos[ti]);
    if (l.casing > 0) parts.casing = model.features.casing.col(static_cast<Index>(s.casing[ti]));
    x.col(t) = embeddings::assemble_input(parts, l);
  }
  return x;
}

}  // namespace

MatrixXd compute_emissions(const ModelParams& model, const SentenceFeatures& s, const network::VariationalMasks* masks,
                           ForwardCache* cache) {
  require(!s.tokens.empty(), "compute_emissions: empty sentence " + s.id);
  const MatrixXd x = build_inputs(model, s, cache);
  MatrixXd hidden = network::bilstm_forward(model.encoder, x, masks, cache ? &cache->encoder : nullptr);
  MatrixXd emissions = network::project(model.projection, hidden);
  if (cache) {
    cache->hidden = std::move(hidden);
    cache->emissions = emissions;
  }
  return emissions;
}

double sentence_nll(const ModelParams& model, const SentenceFeatures& s, const network::VariationalMasks* masks,
                    ModelParams* grads) {
  require(s.gold.size() == s.tokens.size(), "sentence_nll: sentence " + s.id + " has no gold tags");
  ForwardCache cache;
  const MatrixXd emissions = compute_emissions(model, s, masks, grads ? &cache : nullptr);
  if (!grads) return crf::nll(emissions, model.crf, s.gold);

  const crf::Marginals marg = crf::marginals(emissions, model.crf);
  const double loss = marg.log_z - crf::score_sequence(emissions, model.crf, s.gold);
  const crf::CrfGradients g_crf = crf::nll_backward(marg, s.gold);
  grads->crf.transitions += g_crf.params.transitions;
  grads->crf.start += g_crf.params.start;
  grads->crf.end += g_crf.params.end;

  const network::ProjectionGradients g_proj = network::project_backward(model.projection, cache.hidden, g_crf.emissions);
  grads->projection.W += g_proj.params.W;
  grads->projection.b += g_proj.params.b;

  const network::BiLstmGradients g_enc = network::bilstm_backward(model.encoder, cache.encoder, g_proj.hidden);
  grads->encoder.forward += g_enc.params.forward;
  grads->encoder.backward += g_enc.params.backward;

  const auto& l = model.layout;
  for (std::size_t t = 0; t < s.tokens.size(); ++t) {
    const auto col = g_enc.inputs.col(static_cast<Index>(t));
    if (l.character > 0)
      embeddings::char_embed_backward(model.char_lstm, cache.chars[t],
                                      col.segment(static_cast<Index>(l.offset_char()), static_cast<Index>(l.character)),
                                      grads->char_lstm);
    if (l.casing > 0)
      grads->features.casing.col(static_cast<Index>(s.casing[t])) +=
          col.segment(static_cast<Index>(l.offset_casing()), static_cast<Index>(l.casing));
  }
  return loss;
}

std::vector<std::size_t> predict_tags(const ModelParams& model, const SentenceFeatures& s) {
  return crf::viterbi(compute_emissions(model, s), model.crf).tags;
}

std::vector<corpus::Span> tag_document(const ModelParams& model, const corpus::Document& doc,
                                       const EmbeddingSources& sources) {
  const auto feats = featurize(doc, model.layout, sources, nullptr);
  std::vector<corpus::Span> spans;
  std::size_t fi = 0;
  for (const auto& sentence : doc.sentences) {
    if (sentence.empty()) continue;
    std::vector<corpus::BioTag> tags;
    for (std::size_t k : predict_tags(model, feats[fi++])) tags.push_back(model.tags.tag(k));
    auto found = corpus::decode_bio(tags, sentence, doc.text);
    spans.insert(spans.end(), found.begin(), found.end());
  }
  return spans;
}

corpus::TagSet tag_set_for(const std::vector<corpus::Document>& docs) {
  std::set<corpus::PhiType> types;
  for (const auto& d : docs)
    for (const auto& s : d.spans) types.insert(s.type);
  return corpus::TagSet(std::vector<corpus::PhiType>(types.begin(), types.end()));
}

}  // namespace deid::train
