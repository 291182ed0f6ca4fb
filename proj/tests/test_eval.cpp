#include <doctest.h>

#include <sstream>

#include "deid/common/error.hpp"
#include "deid/corpus/synth.hpp"
#include "deid/eval/metrics.hpp"
#include "deid/eval/report.hpp"
#include "oracles.hpp"

using namespace deid;
using namespace deid::eval;
using corpus::BioTag;
using corpus::PhiType;

namespace {

std::vector<BioTag> random_tags(std::mt19937_64& rng, std::size_t n) {
  static const PhiType types[] = {PhiType::Age, PhiType::Date, PhiType::Doctor, PhiType::Patient, PhiType::Phone};
  std::vector<BioTag> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 2) out.push_back(BioTag::outside());
    else out.push_back({(rng() % 2) ? corpus::BioPrefix::B : corpus::BioPrefix::I, types[rng() % 5]});
  }
  return out;
}

// Independent per-token tally of PHI-vs-O decisions.
Counts binary_tally(const std::vector<BioTag>& pred, const std::vector<BioTag>& gold) {
  Counts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i].prefix != corpus::BioPrefix::O;
    const bool g = gold[i].prefix != corpus::BioPrefix::O;
    c.identified += p;
    c.actual += g;
    c.correct += p && g;
  }
  return c;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("binary counting on the AGE example") {
  const std::vector<BioTag> gold{BioTag::outside(), BioTag::begin(PhiType::Age), BioTag::inside(PhiType::Age),
                                 BioTag::outside()};
  const std::vector<BioTag> pred{BioTag::outside(), BioTag::begin(PhiType::Age), BioTag::outside(), BioTag::outside()};
  const auto c = token_metrics(pred, gold, MetricMode::Binary);
  CHECK(c.binary == Counts{1, 1, 2});
  const auto s = score(c.binary);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 0.5);
  CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("binary mode ignores the type, per-type mode does not") {
  const std::vector<BioTag> gold{BioTag::begin(PhiType::Age)};
  const std::vector<BioTag> pred{BioTag::begin(PhiType::Date)};
  const auto c = token_metrics(pred, gold, MetricMode::All);
  CHECK(c.binary.correct == 1);
  CHECK(c.per_type.at(PhiType::Age).correct == 0);
  CHECK(c.per_type.at(PhiType::Date).correct == 0);
  CHECK(c.hipaa.at(corpus::HipaaCategory::Age).correct == 0);
  // B/I prefixes do not matter for type matching.
  const auto d = token_metrics({BioTag::inside(PhiType::Age)}, gold, MetricMode::PerType);
  CHECK(d.per_type.at(PhiType::Age).correct == 1);
}

TEST_CASE("counts match an exhaustive tally on random tag pairs") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pred = random_tags(rng, 10), gold = random_tags(rng, 10);
    const auto c = token_metrics(pred, gold, MetricMode::All);
    CHECK(c.binary == binary_tally(pred, gold));
    for (PhiType t : corpus::all_phi_types()) {
      Counts want;
      for (std::size_t i = 0; i < 10; ++i) {
        const bool p = pred[i].is_phi() && pred[i].type == t, g = gold[i].is_phi() && gold[i].type == t;
        want.identified += p;
        want.actual += g;
        want.correct += p && g;
      }
      const Counts got = c.per_type.count(t) ? c.per_type.at(t) : Counts{};
      CHECK(got == want);
    }
  }
}

TEST_CASE("length mismatch names the sentence") {
  try {
    token_metrics({BioTag::outside()}, {}, MetricMode::Binary, "doc#4");
    FAIL("expected an alignment error");
  } catch (const AlignmentError& e) {
    CHECK(std::string(e.what()).find("doc#4") != std::string::npos);
  }
}

TEST_CASE("finalize arithmetic and conventions") {
  const auto s = score({2, 3, 4});
  CHECK(s.precision == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall == 0.5);
  CHECK(s.f1 == doctest::Approx(4.0 / 7.0));
  CHECK_FALSE(s.f1_undefined);

  const auto z = score({0, 0, 0});
  CHECK(z.precision == 0.0);
  CHECK(z.recall == 0.0);
  CHECK(z.f1 == 0.0);
  CHECK(z.precision_undefined);
  CHECK(z.recall_undefined);
  CHECK(z.f1_undefined);

  const auto eq = score({3, 5, 5});
  CHECK(eq.f1 == doctest::Approx(eq.precision).epsilon(1e-15));

  ConfusionCounts c;
  c.binary = {2, 3, 4};
  const std::string table = emit_report(finalize(c), ReportFormat::Table);
  CHECK(table.find("0.6667") != std::string::npos);
  CHECK(table.find("0.5000") != std::string::npos);
  CHECK(table.find("0.5714") != std::string::npos);
}

TEST_CASE("metric properties over random tag pairs") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pred = random_tags(rng, 12), gold = random_tags(rng, 12);
    const auto c = token_metrics(pred, gold, MetricMode::All);
    const auto swapped = token_metrics(gold, pred, MetricMode::All);
    const auto s = score(c.binary), w = score(swapped.binary);
    CHECK(s.precision == w.recall);
    CHECK(s.recall == w.precision);
    for (double v : {s.precision, s.recall, s.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    if (s.precision > 0 && s.recall > 0) {
      CHECK(s.f1 <= std::max(s.precision, s.recall) + 1e-15);
      CHECK(s.f1 >= std::min(s.precision, s.recall) - 1e-15);
    }
    std::size_t type_correct = 0;
    std::map<corpus::HipaaCategory, Counts> rolled;
    for (const auto& [t, k] : c.per_type) {
      type_correct += k.correct;
      CHECK(k.correct <= std::min(k.identified, k.actual));
    }
    CHECK(type_correct <= c.binary.correct);
    // HIPAA roll-up, recomputed token by token.
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i].is_phi()) ++rolled[oracle::hipaa_table().at(pred[i].type)].identified;
      if (gold[i].is_phi()) ++rolled[oracle::hipaa_table().at(gold[i].type)].actual;
      if (pred[i].is_phi() && gold[i].is_phi() &&
          oracle::hipaa_table().at(pred[i].type) == oracle::hipaa_table().at(gold[i].type))
        ++rolled[oracle::hipaa_table().at(gold[i].type)].correct;
    }
    CHECK(rolled == c.hipaa);
  }
}

TEST_CASE("counts merge associatively and commutatively") {
  std::mt19937_64 rng(3);
  std::vector<ConfusionCounts> parts;
  for (int i = 0; i < 3; ++i) parts.push_back(token_metrics(random_tags(rng, 8), random_tags(rng, 8), MetricMode::All));
  ConfusionCounts ab = parts[0];
  ab += parts[1];
  ab += parts[2];
  ConfusionCounts cb = parts[2];
  cb += parts[1];
  cb += parts[0];
  CHECK(ab == cb);
}

TEST_CASE("report formats") {
  ConfusionCounts c;
  c.binary = {5, 6, 7};
  c.per_type[PhiType::Phone] = {1, 1, 2};
  c.per_type[PhiType::Age] = {2, 2, 2};
  c.per_type[PhiType::Date] = {0, 0, 1};
  c.hipaa[corpus::HipaaCategory::Contact] = {1, 1, 2};
  c.hipaa[corpus::HipaaCategory::Age] = {2, 2, 2};
  c.hipaa[corpus::HipaaCategory::Date] = {0, 0, 1};
  const auto report = finalize(c);

  std::vector<std::string> keys;
  for (const auto& r : report.rows) keys.push_back(r.label);
  CHECK(keys == std::vector<std::string>{"binary", "AGE", "DATE", "CONTACT", "AGE", "DATE", "PHONE"});

  SUBCASE("json round trip") {
    const auto j = nlohmann::json::parse(emit_report(report, ReportFormat::Json));
    CHECK(parse_report_json(j) == report);
  }
  SUBCASE("csv has a header plus one row per key") {
    std::istringstream in(emit_report(report, ReportFormat::Csv));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    CHECK(lines.size() == 1 + report.rows.size());
    CHECK(lines[0].rfind("kind,key,precision,recall,f1", 0) == 0);
    CHECK(lines[1].rfind("binary,binary,0.8333,0.7143,0.7692", 0) == 0);
  }
  SUBCASE("table columns are Precision, Recall, F1") {
    const std::string t = emit_report(report, ReportFormat::Table);
    const auto p = t.find("Precision"), r = t.find("Recall"), f = t.find("F1");
    CHECK(p < r);
    CHECK(r < f);
    CHECK(t.find("undefined") != std::string::npos);
  }
}

TEST_CASE("document evaluation") {
  const auto gold = corpus::generate_synthetic(corpus::SynthConfig::standard(), 3);
  const auto perfect = evaluate_documents(gold, gold, MetricMode::All);
  CHECK(perfect.binary.correct == perfect.binary.actual);
  CHECK(perfect.binary.identified == perfect.binary.actual);
  CHECK(perfect.binary.actual > 0);

  auto empty = gold;
  for (auto& d : empty) d.spans.clear();
  const auto none = evaluate_documents(empty, gold, MetricMode::Binary);
  CHECK(none.binary.identified == 0);
  CHECK(none.binary.actual == perfect.binary.actual);
  CHECK(evaluate_documents({}, gold, MetricMode::Binary) == none);
}

}  // TEST_SUITE
