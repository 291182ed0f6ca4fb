#include <doctest.h>

#include <cmath>

#include "deid/common/error.hpp"
#include "deid/corpus/corpus_io.hpp"
#include "deid/corpus/synth.hpp"
#include "deid/embeddings/char_lstm.hpp"
#include "deid/embeddings/contextual.hpp"
#include "deid/embeddings/features.hpp"
#include "deid/embeddings/word_table.hpp"
#include "oracles.hpp"

using namespace deid;
using namespace deid::embeddings;

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One LSTM step from zero state, written entry by entry.
Eigen::VectorXd hand_step(const network::LstmParams& p, const Eigen::VectorXd& x) {
  const Eigen::Index h = p.U.cols();
  Eigen::VectorXd out(h);
  for (Eigen::Index r = 0; r < h; ++r) {
    double pre[4];
    for (int g = 0; g < 4; ++g) {
      pre[g] = p.b(g * h + r, 0);
      for (Eigen::Index k = 0; k < x.size(); ++k) pre[g] += p.W(g * h + r, k) * x(k);
    }
    const double i = sig(pre[0]), f = sig(pre[1]), g = std::tanh(pre[2]), o = sig(pre[3]);
    (void)f;  // previous cell is zero
    out(r) = o * std::tanh(i * g);
  }
  return out;
}

CharLstmParams random_char_params(std::size_t vocab, std::size_t dim, std::size_t hidden, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CharLstmParams p = CharLstmParams::zeros(vocab, dim, hidden);
  p.table = oracle::random_matrix(p.table.rows(), p.table.cols(), rng, 0.5);
  for (auto* l : {&p.forward, &p.backward}) {
    l->W = oracle::random_matrix(l->W.rows(), l->W.cols(), rng, 0.5);
    l->U = oracle::random_matrix(l->U.rows(), l->U.cols(), rng, 0.5);
    l->b = oracle::random_matrix(l->b.rows(), l->b.cols(), rng, 0.5);
  }
  return p;
}

}  // namespace

TEST_SUITE("embeddings") {

TEST_CASE("word table loading") {
  const auto dir = oracle::temp_dir("words");
  corpus::write_file(dir / "two.txt", "patient 1 0 0\nsmith 0 1 0.5\n");
  const auto t = load_word_embeddings(dir / "two.txt");
  CHECK(t.size() == 2);
  CHECK(t.dim() == 3);

  corpus::write_file(dir / "ragged.txt", "a 1 2 3\nb 1 2\n");
  try {
    load_word_embeddings(dir / "ragged.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  corpus::write_file(dir / "empty.txt", "");
  CHECK_THROWS_AS(load_word_embeddings(dir / "empty.txt"), Error);
}

TEST_CASE("UNK is the vocabulary mean and lookup falls back") {
  const auto dir = oracle::temp_dir("words_unk");
  corpus::write_file(dir / "w.txt", "patient 1 0\nx 0 1\n");
  const auto t = load_word_embeddings(dir / "w.txt");
  CHECK(t.unk()(0) == doctest::Approx(0.5));
  CHECK(t.unk()(1) == doctest::Approx(0.5));
  CHECK(t.lookup("patient")(0) == 1.0);
  CHECK(t.lookup("Patient")(0) == 1.0);
  CHECK(t.lookup("qwzxv") == t.unk());
  CHECK(t.lookup("") == t.unk());
  CHECK(t.lookup("\xc3\xa9t\xc3\xa9") == t.unk());
}

TEST_CASE("word vector files round trip exactly") {
  const auto dir = oracle::temp_dir("words_rt");
  std::map<std::string, std::vector<double>> v{{"a", {0.1, -1e-17, 3.0}}, {"b", {1.0 / 3.0, 2.5e10, -0.0}}};
  write_word_embeddings(dir / "w.txt", v);
  const auto t = load_word_embeddings(dir / "w.txt");
  for (const auto& [w, vec] : v)
    for (std::size_t i = 0; i < vec.size(); ++i) CHECK(t.lookup(w)(static_cast<Eigen::Index>(i)) == vec[i]);
}

TEST_CASE("contextual store") {
  ContextualStore s(3);
  s.insert("doc", 0, 1, Eigen::Vector3d(1, 2, 3));
  CHECK(s.get("doc", 0, 1) == Eigen::Vector3d(1, 2, 3));
  CHECK(s.get("doc", 5, 5) == Eigen::Vector3d::Zero());
  CHECK(s.missing_count() == 1);
  CHECK_THROWS_AS(s.insert("doc", 0, 2, Eigen::Vector2d(1, 2)), ConfigError);
}

TEST_CASE("contextual export round trips byte-exactly") {
  const auto dir = oracle::temp_dir("ctx");
  const auto docs = corpus::generate_synthetic(corpus::SynthConfig::standard(), 2);
  const auto store = pseudo_contextual(docs, 8, [](std::string_view w) { return corpus::synthetic_word_vector(w, 8, 4); });
  write_contextual(store, dir / "a.jsonl");
  const auto loaded = load_contextual(dir / "a.jsonl");
  CHECK(loaded.dim() == 8);
  REQUIRE(loaded.size() == store.size());
  CHECK(loaded.entries() == store.entries());
  write_contextual(loaded, dir / "b.jsonl");
  CHECK(corpus::read_file(dir / "a.jsonl") == corpus::read_file(dir / "b.jsonl"));
}

TEST_CASE("char embedding forward") {
  const CharVocab vocab(std::vector<char32_t>{U'a', U'b', U'c'});
  CHECK(vocab.size() == 4);
  CHECK(vocab.id(U'z') == 0);

  SUBCASE("zero parameters give a zero vector") {
    const auto p = CharLstmParams::zeros(vocab.size(), 4, 25);
    CHECK(p.output_dim() == 50);
    CHECK(char_embed_forward(p, vocab, "abcab") == Eigen::VectorXd::Zero(50));
  }
  SUBCASE("single character matches a hand-computed step") {
    const auto p = random_char_params(vocab.size(), 4, 3, 17);
    const Eigen::VectorXd x = p.table.col(static_cast<Eigen::Index>(vocab.id(U'b')));
    const Eigen::VectorXd out = char_embed_forward(p, vocab, "b");
    const Eigen::VectorXd f = hand_step(p.forward, x), b = hand_step(p.backward, x);
    for (Eigen::Index r = 0; r < 3; ++r) {
      CHECK(out(r) == doctest::Approx(f(r)).epsilon(1e-14));
      CHECK(out(3 + r) == doctest::Approx(b(r)).epsilon(1e-14));
    }
  }
  SUBCASE("tokens are truncated to 25 characters") {
    const auto p = random_char_params(vocab.size(), 4, 3, 5);
    const std::string long_token = "abcabcabcabcabcabcabcabcabcabc";
    CHECK(char_embed_forward(p, vocab, long_token) == char_embed_forward(p, vocab, long_token.substr(0, 25)));
    CHECK(char_embed_forward(p, vocab, long_token) != char_embed_forward(p, vocab, long_token.substr(0, 24)));
  }
  SUBCASE("empty token gives zeros; output is deterministic") {
    const auto p = random_char_params(vocab.size(), 4, 3, 6);
    CHECK(char_embed_forward(p, vocab, "") == Eigen::VectorXd::Zero(6));
    CHECK(char_embed_forward(p, vocab, "cab") == char_embed_forward(p, vocab, "cab"));
  }
}

TEST_CASE("char embedding backward") {
  const CharVocab vocab(std::vector<char32_t>{U'a', U'b', U'c', U'd'});
  auto p = random_char_params(vocab.size(), 3, 3, 23);

  SUBCASE("zero upstream gradient") {
    CharCache cache;
    char_embed_forward(p, vocab, "abd", &cache);
    auto g = CharLstmParams::zeros(vocab.size(), 3, 3);
    char_embed_backward(p, cache, Eigen::VectorXd::Zero(6), g);
    CHECK(g.table.isZero(0));
    CHECK(g.forward.W.isZero(0));
    CHECK(g.backward.U.isZero(0));
  }
  SUBCASE("matches finite differences") {
    std::mt19937_64 rng(3);
    for (const std::string token : {"a", "cab", "dbca", "zab"}) {
      const Eigen::VectorXd w = oracle::random_matrix(6, 1, rng);
      auto loss = [&] { return w.dot(char_embed_forward(p, vocab, token)); };
      CharCache cache;
      char_embed_forward(p, vocab, token, &cache);
      auto g = CharLstmParams::zeros(vocab.size(), 3, 3);
      char_embed_backward(p, cache, w, g);
      std::vector<std::pair<Eigen::MatrixXd*, Eigen::MatrixXd*>> pairs{
          {&p.table, &g.table},         {&p.forward.W, &g.forward.W},   {&p.forward.U, &g.forward.U},
          {&p.forward.b, &g.forward.b}, {&p.backward.W, &g.backward.W}, {&p.backward.U, &g.backward.U},
          {&p.backward.b, &g.backward.b}};
      for (auto [param, grad] : pairs) {
        const Eigen::MatrixXd numeric = oracle::finite_difference(*param, loss);
        CHECK(oracle::relative_error(*grad, numeric) < 1e-6);
      }
    }
  }
  SUBCASE("gradients accumulate across tokens") {
    const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(6, -1, 1);
    CharCache c1, c2;
    char_embed_forward(p, vocab, "ab", &c1);
    char_embed_forward(p, vocab, "bcd", &c2);
    auto g1 = CharLstmParams::zeros(vocab.size(), 3, 3), g2 = g1, both = g1;
    char_embed_backward(p, c1, w, g1);
    char_embed_backward(p, c2, w, g2);
    char_embed_backward(p, c1, w, both);
    char_embed_backward(p, c2, w, both);
    CHECK((both.table - g1.table - g2.table).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((both.forward.W - g1.forward.W - g2.forward.W).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("mismatched gradient width is a contract violation") {
    CharCache cache;
    char_embed_forward(p, vocab, "ab", &cache);
    auto g = CharLstmParams::zeros(vocab.size(), 3, 3);
    CHECK_THROWS_AS(char_embed_backward(p, cache, Eigen::VectorXd::Zero(5), g), ContractViolation);
  }
}

TEST_CASE("input assembly") {
  InputLayout defaults;
  CHECK(defaults.total() == 1414);
  InputParts parts{Eigen::VectorXd::Zero(1024), Eigen::VectorXd::Zero(300), Eigen::VectorXd::Zero(50),
                   Eigen::VectorXd::Zero(20), Eigen::VectorXd::Zero(20)};
  CHECK(assemble_input(parts, defaults) == Eigen::VectorXd::Zero(1414));

  InputLayout no_ctx = defaults;
  no_ctx.contextual = 0;
  CHECK(no_ctx.total() == 390);
  parts.contextual.resize(0);
  parts.word = Eigen::VectorXd::Constant(300, 1.0);
  parts.pos = pos_one_hot(corpus::CoarsePos::Verb);
  const Eigen::VectorXd x = assemble_input(parts, no_ctx);
  CHECK(x.size() == 390);
  CHECK(x.head(300).sum() == 300.0);
  CHECK(x(static_cast<Eigen::Index>(no_ctx.offset_pos()) + static_cast<Eigen::Index>(corpus::CoarsePos::Verb)) == 1.0);
  CHECK(x.segment(static_cast<Eigen::Index>(no_ctx.offset_pos()), 20).sum() == 1.0);

  parts.character = Eigen::VectorXd::Zero(49);
  try {
    assemble_input(parts, no_ctx);
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("character") != std::string::npos);
  }
}

TEST_CASE("pos one-hot vectors are exact") {
  for (std::size_t k = 0; k < corpus::kCoarsePosCount; ++k) {
    const auto v = pos_one_hot(static_cast<corpus::CoarsePos>(k));
    CHECK(v.sum() == 1.0);
    CHECK(v(static_cast<Eigen::Index>(k)) == 1.0);
  }
}

}  // TEST_SUITE
