// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

#include <spdlog/spdlog.h>

#include "deid/cli/cli.hpp"
#include "deid/common/text.hpp"
#include "deid/corpus/corpus_io.hpp"
#include "deid/corpus/synth.hpp"
#include "deid/crf/crf.hpp"
#include "deid/eval/metrics.hpp"
#include "deid/network/dropout.hpp"
#include "deid/train/ablation.hpp"
#include "deid/train/checkpoint.hpp"
#include "deid/train/grad_check.hpp"
#include "deid/train/trainer.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace deid;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string format_number(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Reverse-lexicographic comparison: last position first.
bool reverse_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

crf::CrfParams random_crf(std::size_t K, std::mt19937_64& rng, double scale) {
  crf::CrfParams p;
  p.transitions = oracle::random_matrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K), rng, scale);
  p.start = oracle::random_matrix(static_cast<Eigen::Index>(K), 1, rng, scale);
  p.end = oracle::random_matrix(static_cast<Eigen::Index>(K), 1, rng, scale);
  return p;
}

// Small integer scores so that several paths tie exactly.
Eigen::MatrixXd integer_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 1);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = d(rng);
  return m;
}

Outcome crf_oracle() {
  Outcome out;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> len(1, 5), tags(1, 4);
  double worst = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const std::size_t T = len(rng), K = tags(rng);
    const bool ties = i % 4 == 0;
    crf::CrfParams p = random_crf(K, rng, 1.0);
    Eigen::MatrixXd em = oracle::random_matrix(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(K), rng, 2.0);
    if (ties) {
      p.transitions = integer_matrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K), rng);
      p.start = integer_matrix(static_cast<Eigen::Index>(K), 1, rng);
      p.end = integer_matrix(static_cast<Eigen::Index>(K), 1, rng);
      em = integer_matrix(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(K), rng);
    }
    std::vector<double> scores;
    std::vector<std::size_t> best;
    double best_score = -1e300;
    const auto seqs = oracle::all_sequences(T, K);
    for (const auto& y : seqs) {
      const double s = oracle::chain_score(em, p.transitions, p.start, p.end, y);
      scores.push_back(s);
      if (s > best_score + 1e-9 || (std::abs(s - best_score) <= 1e-9 && reverse_less(y, best))) {
        if (s > best_score + 1e-9) best_score = s;
        best = y;
      }
    }
    const double mx = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (double s : scores) sum += std::exp(s - mx);
    const double log_z = mx + std::log(sum);

    worst = std::max({worst, std::abs(crf::log_partition(em, p) - log_z),
                      std::abs(crf::log_partition(em, p) - crf::brute_force_partition(em, p))});
    const auto v = crf::viterbi(em, p);
    if (v.tags != best) out.fail("viterbi differs from exhaustive argmax on instance " + std::to_string(i));
    if (crf::brute_force_viterbi(em, p).tags != best)
      out.fail("library brute force differs from exhaustive argmax on instance " + std::to_string(i));
  }
  if (worst >= 1e-10) out.fail("log partition error " + format_number("%.3e", worst));
  if (out.passed) out.detail = std::to_string(n) + " instances, max |log Z error| " + format_number("%.2e", worst);
  return out;
}

Outcome gradient_check() {
  Outcome out;
  const train::ToyProblem toy = train::make_toy_problem(17);
  if (toy.model.encoder.hidden() > 5) out.fail("toy hidden size above 5");
  if (toy.model.tags.size() != 3) out.fail("toy tag count is not 3");
  if (toy.sentences.size() != 2) out.fail("toy sentence count is not 2");
  const auto report = train::grad_check(toy.model, toy.sentences, 1e-5, 1e-5);
  double worst = 0.0;
  std::string worst_name;
  for (const auto& t : report.tensors) {
    if (t.relative_error >= worst) {
      worst = t.relative_error;
      worst_name = t.name;
    }
    if (t.relative_error >= 1e-5) out.fail(t.name + " relative error " + format_number("%.3e", t.relative_error));
  }
  for (const char* required : {"char.table", "char.forward.W", "char.backward.U", "casing.table", "encoder.forward.W",
                               "encoder.backward.U", "projection.W", "crf.transitions"}) {
    bool seen = false;
    for (const auto& t : report.tensors) seen |= t.name == required;
    if (!seen) out.fail(std::string("tensor not checked: ") + required);
  }
  if (out.passed)
    out.detail = std::to_string(report.tensors.size()) + " tensors, worst " + worst_name + " " + format_number("%.2e", worst);
  return out;
}

Outcome marginal_normalization() {
  Outcome out;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> len(1, 12), tags(1, 6);
  double worst = 0.0, worst_shift = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t T = len(rng), K = tags(rng);
    const crf::CrfParams p = random_crf(K, rng, 1.5);
    const Eigen::MatrixXd em =
        oracle::random_matrix(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(K), rng, 3.0);
    const auto m = crf::marginals(em, p);
    for (Eigen::Index t = 0; t < m.node.rows(); ++t) worst = std::max(worst, std::abs(m.node.row(t).sum() - 1.0));
    for (const auto& e : m.edge) worst = std::max(worst, std::abs(e.sum() - 1.0));

    Eigen::MatrixXd shifted = em;
    const Eigen::MatrixXd c = oracle::random_matrix(static_cast<Eigen::Index>(T), 1, rng, 10.0);
    for (Eigen::Index t = 0; t < shifted.rows(); ++t) shifted.row(t).array() += c(t, 0);
    const auto ms = crf::marginals(shifted, p);
    worst_shift = std::max(worst_shift, (ms.node - m.node).cwiseAbs().maxCoeff());
    for (std::size_t t = 0; t < m.edge.size(); ++t)
      worst_shift = std::max(worst_shift, (ms.edge[t] - m.edge[t]).cwiseAbs().maxCoeff());
    if (crf::viterbi(shifted, p).tags != crf::viterbi(em, p).tags)
      out.fail("viterbi changed under an emission shift on instance " + std::to_string(i));
  }
  if (worst >= 1e-9) out.fail("marginal sum off by " + format_number("%.3e", worst));
  if (worst_shift >= 1e-9) out.fail("shift moved marginals by " + format_number("%.3e", worst_shift));
  if (out.passed) out.detail = "100 instances, sum error " + format_number("%.2e", worst) + ", shift error " + format_number("%.2e", worst_shift);
  return out;
}

Outcome bio_codec() {
  Outcome out;
  corpus::SynthConfig cfg = corpus::SynthConfig::standard();
  cfg.documents = 1000;
  const auto docs = corpus::generate_synthetic(cfg, 404);
  const corpus::TagSet tags(std::vector<corpus::PhiType>(corpus::all_phi_types().begin(), corpus::all_phi_types().end()));
  std::mt19937_64 rng(404);
  crf::CrfParams p = random_crf(tags.size(), rng, 2.0);
  crf::apply_bio_constraints(p, tags);
  std::size_t spans = 0, sentences = 0;
  for (const auto& doc : docs) {
    const auto encoded = corpus::encode_document(doc);
    std::vector<corpus::Span> decoded;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      if (!corpus::is_valid_bio(encoded[s])) out.fail("orphan I- tag in encoded " + doc.doc_id);
      for (auto& span : corpus::decode_bio(encoded[s], doc.sentences[s], doc.text)) decoded.push_back(std::move(span));

      const Eigen::MatrixXd em = oracle::random_matrix(static_cast<Eigen::Index>(doc.sentences[s].size()),
                                                       static_cast<Eigen::Index>(tags.size()), rng, 3.0);
      std::vector<corpus::BioTag> path;
      for (std::size_t k : crf::viterbi(em, p).tags) path.push_back(tags.tag(k));
      if (!corpus::is_valid_bio(path)) out.fail("orphan I- tag in constrained decode of " + doc.doc_id);
      ++sentences;
    }
    if (decoded != doc.spans) out.fail("decode(encode) differs for " + doc.doc_id);
    spans += doc.spans.size();
  }
  if (out.passed)
    out.detail = std::to_string(docs.size()) + " documents, " + std::to_string(sentences) + " sentences, " +
                 std::to_string(spans) + " spans";
  return out;
}

std::vector<corpus::BioTag> random_tags(std::mt19937_64& rng, std::size_t n) {
  const auto& types = corpus::all_phi_types();
  std::uniform_int_distribution<std::size_t> type(0, types.size() - 1), prefix(0, 3);
  std::vector<corpus::BioTag> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = prefix(rng);
    if (p < 2)
      out.push_back(corpus::BioTag::outside());
    else
      out.push_back(p == 2 ? corpus::BioTag::begin(types[type(rng)]) : corpus::BioTag::inside(types[type(rng)]));
  }
  return out;
}

Outcome metrics_arithmetic() {
  using corpus::BioTag;
  using corpus::PhiType;
  Outcome out;
  const std::vector<BioTag> gold{BioTag::begin(PhiType::Age), BioTag::inside(PhiType::Age), BioTag::inside(PhiType::Age),
                                 BioTag::inside(PhiType::Age), BioTag::outside()};
  const std::vector<BioTag> pred{BioTag::begin(PhiType::Age), BioTag::outside(), BioTag::begin(PhiType::Age),
                                 BioTag::outside(), BioTag::begin(PhiType::Age)};
  const auto hand = eval::finalize(eval::token_metrics(pred, gold, eval::MetricMode::Binary)).binary();
  if (hand.counts != eval::Counts{2, 3, 4}) out.fail("hand example counts");
  if (format_number("%.4f", hand.scores.precision) != "0.6667" || format_number("%.4f", hand.scores.recall) != "0.5000" ||
      format_number("%.4f", hand.scores.f1) != "0.5714")
    out.fail("hand example scores " + format_number("%.4f", hand.scores.precision) + "/" + format_number("%.4f", hand.scores.recall) + "/" +
             format_number("%.4f", hand.scores.f1));

  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = len(rng);
    const auto p = random_tags(rng, n), g = random_tags(rng, n);
    eval::Counts binary;
    std::map<PhiType, eval::Counts> per_type;
    std::map<corpus::HipaaCategory, eval::Counts> hipaa;
    for (std::size_t t = 0; t < n; ++t) {
      if (p[t].is_phi()) {
        ++binary.identified;
        ++per_type[p[t].type].identified;
        ++hipaa[oracle::hipaa_table().at(p[t].type)].identified;
      }
      if (g[t].is_phi()) {
        ++binary.actual;
        ++per_type[g[t].type].actual;
        ++hipaa[oracle::hipaa_table().at(g[t].type)].actual;
      }
      if (p[t].is_phi() && g[t].is_phi()) {
        ++binary.correct;
        if (p[t].type == g[t].type) ++per_type[g[t].type].correct;
        if (oracle::hipaa_table().at(p[t].type) == oracle::hipaa_table().at(g[t].type))
          ++hipaa[oracle::hipaa_table().at(g[t].type)].correct;
      }
    }
    const auto c = eval::token_metrics(p, g, eval::MetricMode::All);
    if (c.binary != binary || c.per_type != per_type || c.hipaa != hipaa)
      out.fail("tally mismatch on pair " + std::to_string(i));
  }
  for (corpus::PhiType t : corpus::all_phi_types())
    if (corpus::map_to_hipaa(t) != oracle::hipaa_table().at(t))
      out.fail(std::string("HIPAA group differs for ") + std::string(corpus::to_string(t)));
  if (out.passed) out.detail = "hand example, 100 random pairs, " + std::to_string(corpus::kPhiTypeCount) + " types";
  return out;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "deid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

Outcome synthetic_benchmark() {
  Outcome out;
  const fs::path dir = oracle::temp_dir("acceptance_benchmark");
  const fs::path data = dir / "data";
  if (invoke({"synth", "--seed", "2024", "--out", data.string()}) != cli::kExitOk) {
    out.fail("synth failed");
    return out;
  }
  std::size_t sentences = 0;
  for (const char* split : {"train", "test"})
    for (const auto& d : corpus::load_corpus(data / split, corpus::CorpusFormat::NativeJson)) sentences += d.sentences.size();
  if (invoke({"train", "--config", (data / "train_config.json").string(), "--corpus", (data / "train").string(),
              "--out", (dir / "model.json").string()}) != cli::kExitOk) {
    out.fail("train failed");
    return out;
  }
  const auto history = nlohmann::json::parse(corpus::read_file(dir / "model.json.history.json"));
  const std::size_t epochs = history["epochs"].size();
  if (epochs > 40) out.fail("ran " + std::to_string(epochs) + " epochs");
  if (invoke({"tag", "--model", (dir / "model.json").string(), "--in", (data / "test").string(), "--out",
              (dir / "pred").string()}) != cli::kExitOk) {
    out.fail("tag failed");
    return out;
  }
  if (invoke({"eval", "--pred", (dir / "pred").string(), "--gold", (data / "test").string(), "--report-format", "json",
              "--out", (dir / "report.json").string()}) != cli::kExitOk) {
    out.fail("eval failed");
    return out;
  }
  const auto report = nlohmann::json::parse(corpus::read_file(dir / "report.json"));
  const double f1 = report["rows"][0]["f1"].get<double>();
  if (f1 < 0.95) out.fail("held-out binary F1 " + format_number("%.4f", f1));
  const std::string summary = std::to_string(sentences) + " sentences, " + std::to_string(epochs) +
                              " epochs (best " + std::to_string(history["best_epoch"].get<std::size_t>()) +
                              "), held-out binary F1 " + format_number("%.4f", f1);
  if (out.passed)
    out.detail = summary;
  else
    out.detail += "; " + summary;
  return out;
}

struct Fixture {
  std::vector<corpus::Document> docs;
  std::unique_ptr<embeddings::WordEmbeddingTable> words;
  std::unique_ptr<embeddings::ContextualStore> contextual;
  train::EmbeddingSources sources() const { return {words.get(), contextual.get()}; }
};

Fixture make_fixture(std::size_t documents, std::uint64_t seed, std::size_t sentences_per_document = 12) {
  corpus::SynthConfig sc = corpus::SynthConfig::standard();
  sc.documents = documents;
  sc.sentences_per_document = sentences_per_document;
  Fixture f;
  f.docs = corpus::generate_synthetic(sc, seed);
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  for (const auto& w : corpus::synthetic_vocabulary(f.docs)) {
    const auto v = corpus::synthetic_word_vector(w, sc.word_dim, seed);
    vectors.emplace(w, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  f.words = std::make_unique<embeddings::WordEmbeddingTable>(sc.word_dim, std::move(vectors));
  f.contextual = std::make_unique<embeddings::ContextualStore>(embeddings::pseudo_contextual(
      f.docs, sc.contextual_dim,
      [&](std::string_view w) { return corpus::synthetic_word_vector(ascii_lower(w), sc.contextual_dim, seed + 1); }));
  return f;
}

// A one-sentence corpus, memorized with dropout off.
Outcome overfit() {
  Outcome out;
  const Fixture f = make_fixture(1, 707, 1);
  train::TrainConfig c;
  c.seed = 707;
  c.dropout = 0.0;
  c.max_epochs = 200;
  c.patience = 200;
  c.batch_size = 1;
  train::TrainingData data;
  data.chars = embeddings::CharVocab::build(f.docs);
  data.tags = train::tag_set_for(f.docs);
  data.layout = train::layout_for(c, f.sources());
  const auto sentences = train::featurize(f.docs[0], data.layout, f.sources(), &data.tags);
  if (sentences.size() != 1) out.fail("corpus has " + std::to_string(sentences.size()) + " sentences");
  const auto& sentence = sentences.front();
  data.train = {sentence};
  data.validation = {sentence};
  const auto result = train::train(c, data);
  const auto& epochs = result.history.epochs;
  std::size_t reached = 0;
  for (const auto& e : epochs)
    if (reached == 0 && e.train_loss < 0.01) reached = e.epoch;
  const double final_nll = train::sentence_nll(result.model, sentence);
  const auto phi = std::count_if(sentence.gold.begin(), sentence.gold.end(), [](std::size_t k) { return k != 0; });
  const std::string shape = std::to_string(sentence.tokens.size()) + " tokens, " + std::to_string(phi) + " PHI";
  if (reached == 0) out.fail(shape + ", training NLL stayed at " + format_number("%.4g", epochs.back().train_loss));
  if (final_nll >= 0.01) out.fail(shape + ", kept model NLL " + format_number("%.4g", final_nll));
  if (out.passed)
    out.detail = shape + ", NLL < 0.01 at epoch " + std::to_string(reached) + ", final " + format_number("%.2e", final_nll);
  return out;
}

Outcome determinism() {
  Outcome out;
  const Fixture f = make_fixture(8, 808);
  train::TrainConfig c;
  c.seed = 808;
  c.hidden = 16;
  c.max_epochs = 4;
  c.patience = 4;
  const auto data = train::prepare_training_data(c, f.docs, f.sources());
  const auto a = train::train(c, data);
  const auto b = train::train(c, data);
  if (!(a.history == b.history)) out.fail("histories differ for the same seed");
  if (train::checkpoint_to_json(a.model).dump() != train::checkpoint_to_json(b.model).dump())
    out.fail("parameters differ for the same seed");

  const fs::path dir = oracle::temp_dir("acceptance_checkpoint");
  train::save_checkpoint(a.model, dir / "a.json");
  const auto loaded = train::load_checkpoint(dir / "a.json");
  train::save_checkpoint(loaded, dir / "b.json");
  if (corpus::read_file(dir / "a.json") != corpus::read_file(dir / "b.json")) out.fail("checkpoint re-save differs");
  std::size_t tokens = 0;
  for (const auto& doc : f.docs) {
    for (const auto& s : train::featurize(doc, loaded.layout, f.sources(), nullptr)) {
      if (train::predict_tags(a.model, s) != train::predict_tags(loaded, s)) out.fail("tags differ after reload in " + s.id);
      if (train::compute_emissions(a.model, s) != train::compute_emissions(loaded, s))
        out.fail("emissions differ after reload in " + s.id);
      tokens += s.tokens.size();
    }
    if (train::tag_document(a.model, doc, f.sources()) != train::tag_document(loaded, doc, f.sources()))
      out.fail("spans differ after reload in " + doc.doc_id);
  }
  if (out.passed)
    out.detail = std::to_string(a.history.epochs.size()) + " epochs twice, " + std::to_string(tokens) +
                 " tokens tagged identically after reload";
  return out;
}

bool masks_constant(const network::VariationalMasks& m) {
  for (const auto* mat : {&m.forward_input, &m.backward_input, &m.forward_recurrent, &m.backward_recurrent,
                          &m.forward_output, &m.backward_output})
    if (mat->size() > 0 && !network::columns_identical(*mat)) return false;
  return true;
}

Outcome dropout_contract() {
  Outcome out;
  Rng rng = make_stream(909, "dropout");
  std::uniform_int_distribution<std::size_t> len(1, 60);
  for (int i = 0; i < 1000; ++i) {
    const auto m = network::sample_masks(0.5, {32, 100, len(rng)}, rng);
    if (!masks_constant(m)) out.fail("variational mask varies within sentence " + std::to_string(i));
  }
  std::size_t kept = 0;
  const std::size_t draws = 10000;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto m = network::sample_masks(0.5, {0, 1, 1}, rng);
    const double v = m.forward_recurrent(0, 0);
    if (v != 0.0 && v != 2.0) out.fail("mask entry " + format_number("%g", v) + " is neither 0 nor 1/(1-p)");
    kept += v != 0.0;
  }
  const double rate = static_cast<double>(kept) / static_cast<double>(draws);
  if (std::abs(rate - 0.5) > 0.02) out.fail("keep rate " + format_number("%.4f", rate));

  // The naive ablation variant, through the model's own mask sampler.
  const Fixture f = make_fixture(2, 909);
  train::TrainConfig base;
  base.seed = 909;
  train::TrainConfig naive;
  for (const auto& v : train::default_ablation_grid(base))
    if (v.name == "naive_dropout") naive = v.config;
  if (naive.dropout_mode != network::DropoutMode::Naive) out.fail("ablation grid has no naive_dropout row");
  const auto data = train::prepare_training_data(naive, f.docs, f.sources());
  Rng init = make_stream(909, "init");
  const auto model = train::init_model(naive, data.layout, data.chars, data.tags, init);
  std::size_t violated = 0, probed = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t T = 2 + len(rng);
    ++probed;
    violated += !masks_constant(train::draw_masks(model, T, rng));
  }
  if (violated != probed)
    out.fail("naive mode passed the equality probe on " + std::to_string(probed - violated) + " sentences");
  if (out.passed)
    out.detail = "1000 variational sentences constant, keep rate " + format_number("%.4f", rate) + ", naive violations " +
                 std::to_string(violated) + "/" + std::to_string(probed);
  return out;
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {"CRF oracle equivalence", crf_oracle, 10.0},
      {"gradient correctness", gradient_check, 60.0},
      {"marginal normalization", marginal_normalization, 0.0},
      {"BIO codec", bio_codec, 0.0},
      {"metrics arithmetic", metrics_arithmetic, 0.0},
      {"synthetic end-to-end benchmark", synthetic_benchmark, 900.0},
      {"single-sentence overfit", overfit, 0.0},
      {"determinism and serialization", determinism, 0.0},
      {"variational dropout contract", dropout_contract, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    if (criteria[i].budget_seconds > 0.0 && elapsed >= criteria[i].budget_seconds)
      o.fail("took " + format_number("%.1f", elapsed) + " s, budget " + format_number("%.0f", criteria[i].budget_seconds) + " s");
    std::printf("%s %zu. %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                elapsed);
    std::fflush(stdout);
    failures += !o.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
