// Acceptance runner: one PASS/FAIL line per criterion.
//
//   sptk_acceptance [--only 1,2,5] [--data-dir DIR]
//
// Criteria 7, 8 and 10 read the released data sets from DIR (default
// data/release): sp10k.tsv (gold format), omcs.tsv (triplet format) and
// wsc72.json (Winograd questions).

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracle/naive_extract.hpp"
#include "oracle/rank_oracle.hpp"
#include "sptk/annotate.hpp"
#include "sptk/cli.hpp"
#include "sptk/commonsense.hpp"
#include "sptk/conllu.hpp"
#include "sptk/eval.hpp"
#include "sptk/extract.hpp"
#include "sptk/nn.hpp"
#include "sptk/random.hpp"
#include "sptk/scorers.hpp"
#include "sptk/stats.hpp"
#include "sptk/winograd.hpp"
#include "support/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace sptk;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kPpSumTol = 1e-9;
constexpr double kDsTol = 1e-12;
constexpr double kSpearmanTol = 1e-12;
constexpr double kIaaTol = 1e-9;
constexpr double kWinogradRowTol = 0.1;         // percentage points
constexpr double kCoverageTol = 2.0;         // percentage points
constexpr int kWinogradCellTol = 2;
constexpr double kNnTrainedMin = 0.90;
constexpr double kNnUntrainedLo = 0.45;
constexpr double kNnUntrainedHi = 0.55;
constexpr double kExtractSeconds = 5.0;
constexpr double kNnSeconds = 60.0;
constexpr double kCoverageSeconds = 300.0;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(2);
  os << v;
  return os.str();
}

CountTable fixture_counts() {
  std::ifstream in(support::fixture("corpus.conllu"));
  ConlluReader reader(in, "corpus.conllu");
  return build_counts(reader);
}

// 1 -------------------------------------------------------------------------
Verdict extraction_oracle(const std::string&) {
  Verdict o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream in(support::fixture("corpus.conllu"));
  ConlluReader reader(in, "corpus.conllu");
  const CountTable counts = build_counts(reader);
  const auto corpus = oracle::read_conllu(support::fixture("corpus.conllu"));
  const auto expected = oracle::recount(corpus, false);
  const double elapsed = seconds_since(t0);

  o.require(corpus.size() >= 100, "fixture has >= 100 sentences (" + std::to_string(corpus.size()) + ")");
  std::size_t mismatches = 0, library_pairs = 0;
  for (const auto& [key, n] : expected) {
    const auto& [rel, head, dep] = key;
    if (counts.count(parse_relation(rel), head, dep) != n) ++mismatches;
  }
  for (Relation r : kAllRelations) library_pairs += counts.unique_pairs(r);
  o.require(mismatches == 0, "every oracle count matches (" + std::to_string(mismatches) + " differ)");
  o.require(library_pairs == expected.size(), "same pair set (" + std::to_string(library_pairs) + " vs " +
                                                  std::to_string(expected.size()) + ")");
  o.require(elapsed < kExtractSeconds, "runtime < 5 s");
  o.note(std::to_string(corpus.size()) + " sentences, " + std::to_string(expected.size()) + " pairs, " +
         fmt(elapsed, 3) + " s");
  return o;
}

// 2 -------------------------------------------------------------------------
Verdict pp_arithmetic(const std::string&) {
  Verdict o;
  const CountTable c = fixture_counts();
  double worst = 0.0;
  std::size_t heads = 0;
  for (Relation r : kAllRelations) {
    for (const auto& [head, entry] : c.table(r)) {
      double sum = 0.0;
      for (const auto& [dep, n] : entry.dependents) sum += *pp_score(c, SPPair(r, head, dep));
      worst = std::max(worst, std::abs(sum - 1.0));
      ++heads;
    }
  }
  o.require(worst <= kPpSumTol, "per-head sums within 1e-9 (worst " + sci(worst) + ")");
  CountTable two;
  two.add(SPPair(Relation::Dobj, "eat", "worm"), 2);
  two.add(SPPair(Relation::Dobj, "eat", "bread"), 2);
  o.require(pp_score(two, SPPair(Relation::Dobj, "eat", "worm")) == 0.5, "2/4 == 0.5 exactly");
  o.note(std::to_string(heads) + " heads, max |sum-1| = " + sci(worst));
  return o;
}

// 3 -------------------------------------------------------------------------
Verdict ds_arithmetic(const std::string&) {
  Verdict o;
  CountTable c;
  c.add(SPPair(Relation::Dobj, "eat", "apple"), 3);
  c.add(SPPair(Relation::Dobj, "eat", "bread"), 1);
  EmbeddingTable e(2);
  e.add("query", Eigen::Vector2d(1.0, 0.0));
  e.add("apple", Eigen::Vector2d(0.8, 0.6));
  e.add("bread", Eigen::Vector2d(0.4, std::sqrt(1.0 - 0.16)));
  const auto hand = ds_score(c, e, SPPair(Relation::Dobj, "eat", "query"));
  o.require(hand && std::abs(*hand - 0.7) <= kDsTol, "(3*0.8 + 1*0.4)/4 = 0.7 within 1e-12");

  CountTable single;
  single.add(SPPair(Relation::Dobj, "eat", "apple"), 5);
  o.require(ds_score(single, e, SPPair(Relation::Dobj, "eat", "apple")) == 1.0, "single identity is exactly 1");

  const CountTable fc = fixture_counts();
  const EmbeddingTable fe = load_embeddings(support::fixture("embeddings.txt"));
  std::size_t defined = 0, outside = 0;
  for (Relation r : kAllRelations) {
    for (const auto& [head, entry] : fc.table(r)) {
      for (const auto& w : fe.words()) {
        const auto s = ds_score(fc, fe, SPPair(r, head, w));
        if (!s) continue;
        ++defined;
        outside += (*s < -1.0 || *s > 1.0);
      }
    }
  }
  o.require(defined > 0 && outside == 0, "fixture scores in [-1, 1]");
  o.note("hand example " + fmt(hand.value_or(NAN), 15) + ", " + std::to_string(defined) + " fixture scores checked");
  return o;
}

// 4 -------------------------------------------------------------------------
Verdict spearman_correctness(const std::string&) {
  Verdict o;
  Rng rng(2018);
  double worst_free = 0.0, worst_tied = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 60);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = uniform_real(rng);
      b[i] = uniform_real(rng);
    }
    worst_free = std::max(worst_free, std::abs(spearman(a, b) - oracle::closed_form_spearman(a, b)));
  }
  int tied_cases = 0;
  while (tied_cases < 1000) {
    const std::size_t n = 3 + uniform_index(rng, 60);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(uniform_index(rng, 5));
      b[i] = static_cast<double>(uniform_index(rng, 4));
    }
    auto constant = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
    };
    if (constant(a) || constant(b)) continue;
    worst_tied = std::max(worst_tied, std::abs(spearman(a, b) - oracle::brute_spearman(a, b)));
    ++tied_cases;
  }
  o.require(worst_free <= kSpearmanTol, "tie-free vs closed form within 1e-12");
  o.require(worst_tied <= kSpearmanTol, "tied vs brute-force average ranks within 1e-12");
  o.note("max deviation " + sci(worst_free) + " (tie-free), " + sci(worst_tied) + " (tied)");
  return o;
}

// 5 -------------------------------------------------------------------------
bool same_model(const NeuralModel& a, const NeuralModel& b) {
  auto same = [](const auto& x, const auto& y) {
    return x.size() == y.size() &&
           std::memcmp(x.data(), y.data(), sizeof(double) * static_cast<std::size_t>(x.size())) == 0;
  };
  if (a.vocabulary() != b.vocabulary()) return false;
  for (const auto& [r, na] : a.networks()) {
    const auto& nb = b.networks().at(r);
    if (!same(na.embeddings, nb.embeddings) || !same(na.hidden_weights, nb.hidden_weights) ||
        !same(na.hidden_bias, nb.hidden_bias) || !same(na.output_weights, nb.output_weights) ||
        na.output_bias != nb.output_bias) {
      return false;
    }
  }
  return a.networks().size() == b.networks().size();
}

Verdict nn_sanity(const std::string&) {
  Verdict o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto planted = support::planted_corpus();
  NNConfig config;  // library defaults
  config.seed = 7;
  const NeuralModel trained = nn_train(planted.instances, config, planted.lexicon);
  const NeuralModel again = nn_train(planted.instances, config, planted.lexicon);
  NNConfig zero = config;
  zero.epochs = 0;
  const NeuralModel untrained = nn_train(planted.instances, zero, planted.lexicon);

  const double acc = pseudo_disambiguation(trained, planted.instances, planted.lexicon, 1);
  const double chance = pseudo_disambiguation(untrained, planted.instances, planted.lexicon, 1);
  const double elapsed = seconds_since(t0);
  o.require(planted.instances.size() == 1000, "1,000 planted instances");
  o.require(acc >= kNnTrainedMin, "trained accuracy >= 0.90");
  o.require(chance >= kNnUntrainedLo && chance <= kNnUntrainedHi, "untrained accuracy in [0.45, 0.55]");
  o.require(same_model(trained, again), "seeded retraining is bitwise identical");
  o.require(elapsed < kNnSeconds, "runtime < 60 s");
  o.note("trained " + fmt(acc) + ", untrained " + fmt(chance) + ", " + fmt(elapsed, 2) + " s");
  return o;
}

// 6 -------------------------------------------------------------------------
Verdict winograd_arithmetic(const std::string&) {
  Verdict o;
  struct Row {
    const char* name;
    std::size_t c, w, na;
    double ap, ao;
  };
  const Row rows[] = {{"Stanford", 33, 35, 4, 48.5, 48.6},
                      {"End2end", 36, 36, 0, 50.0, 50.0},
                      {"PP", 36, 19, 17, 65.5, 61.8},
                      {"SP-10K", 13, 0, 59, 100.0, 59.0}};
  std::string summary;
  for (const Row& r : rows) {
    const Accuracy a = accuracy_from_counts(r.c, r.w, r.na);
    const double ap = a.ap ? 100.0 * *a.ap : NAN;
    const double ao = 100.0 * a.ao;
    o.require(std::abs(ap - r.ap) <= kWinogradRowTol, std::string(r.name) + " Ap");
    o.require(std::abs(ao - r.ao) <= kWinogradRowTol, std::string(r.name) + " Ao");
    summary += std::string(summary.empty() ? "" : "; ") + r.name + " " + fmt(ap, 2) + "/" + fmt(ao, 2);
  }
  o.note(summary);
  return o;
}

// Release data ---------------------------------------------------------------
struct Release {
  std::string sp10k, omcs, wsc;
};

Release release_paths(const std::string& dir) {
  return {dir + "/sp10k.tsv", dir + "/omcs.tsv", dir + "/wsc72.json"};
}

bool need_files(Verdict& o, std::initializer_list<std::string> paths) {
  bool ok = true;
  for (const auto& p : paths) {
    if (!fs::is_regular_file(p)) {
      o.require(false, "release file present: " + p);
      ok = false;
    }
  }
  return ok;
}

// 7 -------------------------------------------------------------------------
Verdict coverage_reproduction(const std::string& data_dir) {
  Verdict o;
  const Release rel = release_paths(data_dir);
  if (!need_files(o, {rel.sp10k, rel.omcs})) return o;
  const auto t0 = std::chrono::steady_clock::now();
  const GoldSet gold = load_gold(rel.sp10k);
  const OMCSIndex index(load_omcs(rel.omcs));
  const auto rows = coverage_by_group(gold, index);
  const double elapsed = seconds_since(t0);

  struct Expected {
    std::size_t pairs;
    double exact, partial;
  };
  const Expected table[] = {{755, 11.26, 38.01}, {2600, 2.58, 34.04}, {2809, 0.71, 17.94}, {2396, 0.25, 7.80}, {1440, 0.35, 5.69}};
  std::string summary;
  for (std::size_t g = 0; g < 5; ++g) {
    const std::string name(to_string(rows[g].group));
    o.require(rows[g].pairs == table[g].pairs, name + " size " + std::to_string(rows[g].pairs));
    o.require(std::abs(rows[g].exact_percent - table[g].exact) <= kCoverageTol, name + " exact %");
    o.require(std::abs(rows[g].partial_percent - table[g].partial) <= kCoverageTol, name + " partial %");
    if (g > 0) o.require(rows[g].partial_percent < rows[g - 1].partial_percent, name + " partial rate decreases");
    summary += std::string(summary.empty() ? "" : "; ") + name + " " + std::to_string(rows[g].pairs) + " " +
               fmt(rows[g].exact_percent, 2) + "/" + fmt(rows[g].partial_percent, 2);
  }
  o.require(elapsed < kCoverageSeconds, "runtime < 5 min");
  o.note(summary);
  return o;
}

// 8 -------------------------------------------------------------------------
Verdict matrix_qualitative(const std::string& data_dir) {
  Verdict o;
  const Release rel = release_paths(data_dir);
  if (!need_files(o, {rel.sp10k, rel.omcs})) return o;
  const RelationMatrix m = relation_matrix(load_gold(rel.sp10k), OMCSIndex(load_omcs(rel.omcs)));
  const std::pair<Relation, std::string> cells[] = {
      {Relation::Dobj, "UsedFor"}, {Relation::Nsubj, "CapableOf"}, {Relation::Amod, "HasProperty"}};
  for (const auto& [r, omcs] : cells) {
    std::vector<std::size_t> row;
    for (const auto& name : m.omcs_relations) row.push_back(m.cell(r, name).total());
    std::sort(row.rbegin(), row.rend());
    const std::size_t mine = m.cell(r, omcs).total();
    const std::size_t rank = static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [&](std::size_t v) { return v > mine; }));
    const std::string label = "(" + std::string(to_string(r)) + ", " + omcs + ")";
    o.require(mine > 0 && rank < 2, label + " is first or second in its row");
    o.note(label + " = " + std::to_string(mine) + ", rank " + std::to_string(rank + 1));
  }
  return o;
}

// 9 -------------------------------------------------------------------------
Verdict aggregation_and_iaa(const std::string&) {
  Verdict o;
  o.require(scale_rating(1.0) == 0.0 && scale_rating(3.0) == 5.0 && scale_rating(5.0) == 10.0,
            "scaling endpoints 1->0, 3->5, 5->10");

  const auto three = support::three_annotators();
  std::map<std::string, std::map<std::string, double>> table;
  for (const auto& r : three) table[r.annotator_id][r.pair.dependent()] = r.rating;
  const double expected = oracle::brute_loo(table);
  const double got = iaa(three).overall;
  o.require(std::abs(got - expected) <= kIaaTol, "3-annotator IAA matches the oracle within 1e-9");

  std::vector<RawRating> same;
  for (const char* who : {"a", "b", "c"}) {
    int v = 1;
    for (const char* dep : {"meal", "apple", "stone", "idea"}) {
      same.push_back({who, SPPair(Relation::Dobj, "eat", dep), v++, false, {}});
    }
  }
  const double identical = iaa(same).overall;
  o.require(identical == 1.0, "identical annotators give exactly 1");
  o.note("IAA " + fmt(got, 12) + " vs oracle " + fmt(expected, 12) + "; identical " + fmt(identical, 1));
  return o;
}

// 10 ------------------------------------------------------------------------
Verdict winograd_gold(const std::string& data_dir) {
  Verdict o;
  const Release rel = release_paths(data_dir);
  if (!need_files(o, {rel.sp10k, rel.wsc})) return o;
  const GoldSet gold = load_gold(rel.sp10k);
  const TableModel model = gold.as_model();
  const auto questions = load_questions(rel.wsc);
  std::vector<Prediction> preds;
  std::size_t wrong_with_both = 0;
  for (const auto& q : questions) {
    preds.push_back(resolve(q, model));
    if (preds.back().subject_score && preds.back().object_score && preds.back().outcome == sptk::Outcome::Wrong) {
      ++wrong_with_both;
    }
  }
  const Accuracy a = score_accuracy(preds);
  auto near = [](std::size_t got, int want) { return std::abs(static_cast<int>(got) - want) <= kWinogradCellTol; };
  o.require(questions.size() == 72, "72 questions");
  o.require(wrong_with_both == 0, "no Wrong prediction when both pairs are in the gold set");
  o.require(near(a.correct, 13) && near(a.wrong, 0) && near(a.na, 59), "(correct, wrong, na) within 2 of (13, 0, 59)");
  o.note("(" + std::to_string(a.correct) + ", " + std::to_string(a.wrong) + ", " + std::to_string(a.na) + ")");
  return o;
}

// 11 ------------------------------------------------------------------------
Verdict discrepancy(const std::string&) {
  Verdict o;
  const auto d = support::discrepancy_scenario();
  auto counts = std::make_shared<CountTable>(d.counts);
  auto emb = std::make_shared<EmbeddingTable>(d.embeddings);
  const PosteriorProbabilityModel pp(counts);
  const DistributionalSimilarityModel ds(counts, emb);

  const double pd_pp = pseudo_disambiguation(pp, d.test_pairs, d.lexicon, 3);
  const double pd_ds = pseudo_disambiguation(ds, d.test_pairs, d.lexicon, 3);
  const double rho_pp = *evaluate(pp, d.gold).overall;
  const double rho_ds = *evaluate(ds, d.gold).overall;
  const bool pd_prefers_pp = pd_pp > pd_ds;
  const bool rho_prefers_pp = rho_pp > rho_ds;
  o.require(pd_pp != pd_ds && rho_pp != rho_ds, "both metrics separate the models");
  o.require(pd_prefers_pp != rho_prefers_pp, "the two rankings disagree");
  o.note("pseudo PP " + fmt(pd_pp) + " DS " + fmt(pd_ds) + "; rho PP " + fmt(rho_pp) + " DS " + fmt(rho_ds));
  return o;
}

// 12 ------------------------------------------------------------------------
std::string slurp(const std::string& path) { return support::read_file(path); }

Verdict determinism(const std::string&) {
  Verdict o;
  support::TempDir dir;
  std::ostringstream sink;
  auto run = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };

  // Shared inputs.
  const auto d = support::discrepancy_scenario();
  save_counts(d.counts, dir.file("disc_counts.tsv"));
  save_gold(d.gold, dir.file("disc_gold.tsv"));
  {
    std::ofstream e(dir.file("disc_emb.txt"));
    for (const auto& w : d.embeddings.words()) {
      const auto v = *d.embeddings.find(w);
      e << w;
      for (Eigen::Index i = 0; i < v.size(); ++i) e << ' ' << v[i];
      e << '\n';
    }
    std::ofstream pairs(dir.file("survey_pairs.tsv"));
    for (int i = 0; i < 100; ++i) pairs << "dobj\th" << i << "\td" << i << '\n';
    std::ofstream checks(dir.file("checkpoints.tsv"));
    checks << "dobj\teat\tmeal\ndobj\tdrink\twater\ndobj\teat\tstone\n";
  }
  const std::string corpus_counts = dir.file("corpus_counts.tsv");
  o.require(run({"extract", "--in", support::fixture("corpus.conllu"), "--out", corpus_counts}) == 0, "extract runs");
  o.require(run({"score", "--backend", "ds", "--counts", dir.file("disc_counts.tsv"), "--embeddings",
                 dir.file("disc_emb.txt"), "--pairs", dir.file("disc_gold.tsv"), "--out", dir.file("ds_scores.tsv")}) == 0,
            "score runs");

  using Maker = std::function<std::vector<std::string>(const std::string& out)>;
  const std::vector<std::pair<std::string, Maker>> commands = {
      {"candidates",
       [&](const std::string& out) {
         return std::vector<std::string>{"candidates", "--counts", corpus_counts, "--lexicon",
                                         support::fixture("lexicon.tsv"), "--heads", "5", "--seed", "31", "--out", out};
       }},
      {"train-nn",
       [&](const std::string& out) {
         return std::vector<std::string>{"train-nn", "--counts", corpus_counts, "--lexicon", support::fixture("lexicon.tsv"),
                                         "--embedding-dim", "8", "--hidden-dim", "8", "--epochs", "3", "--seed", "31",
                                         "--out", out};
       }},
      {"pseudo",
       [&](const std::string& out) {
         return std::vector<std::string>{"pseudo", "--backend", "pp", "--counts", corpus_counts, "--test", corpus_counts,
                                         "--lexicon", support::fixture("lexicon.tsv"), "--seed", "31", "--out", out};
       }},
      {"survey",
       [&](const std::string& out) {
         return std::vector<std::string>{"survey", "--pairs", dir.file("survey_pairs.tsv"), "--checkpoints",
                                         dir.file("checkpoints.tsv"), "--seed", "31", "--out", out};
       }},
      {"eval --against",
       [&](const std::string& out) {
         return std::vector<std::string>{"eval", "--backend", "pp", "--counts", dir.file("disc_counts.tsv"), "--gold",
                                         dir.file("disc_gold.tsv"), "--against", dir.file("ds_scores.tsv"),
                                         "--resamples", "500", "--seed", "31", "--out", out};
       }},
  };
  std::size_t identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto& [name, make] = commands[i];
    const std::string a = dir.file("run" + std::to_string(i) + "_a.out");
    const std::string b = dir.file("run" + std::to_string(i) + "_b.out");
    const int ca = run(make(a));
    const int cb = run(make(b));
    o.require(ca == 0 && cb == 0, name + " exits 0");
    if (ca != 0 || cb != 0) continue;
    const bool same = slurp(a) == slurp(b);
    o.require(same, name + " artifacts byte-identical");
    identical += same;
  }
  o.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " seeded subcommands reproduced byte for byte");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance criteria");
  std::vector<int> only;
  std::string data_dir = std::string(SPTK_DATA_DIR) + "/release";
  app.add_option("--only", only, "Criterion numbers to run")->delimiter(',');
  app.add_option("--data-dir", data_dir, "Directory with sp10k.tsv, omcs.tsv and wsc72.json");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "extraction oracle equivalence", extraction_oracle},
      {2, "PP normalization and arithmetic", pp_arithmetic},
      {3, "DS arithmetic", ds_arithmetic},
      {4, "Spearman correctness", spearman_correctness},
      {5, "NN training sanity", nn_sanity},
      {6, "Winograd metric arithmetic", winograd_arithmetic},
      {7, "commonsense coverage by group", coverage_reproduction},
      {8, "relation matrix qualitative check", matrix_qualitative},
      {9, "aggregation and IAA", aggregation_and_iaa},
      {10, "Winograd with gold scorer", winograd_gold},
      {11, "pseudo-disambiguation discrepancy", discrepancy},
      {12, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Verdict result;
    try {
      result = c.run(data_dir);
    } catch (const std::exception& e) {
      result.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : result.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::cout << (result.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << detail << '\n';
    failures += !result.pass;
  }
  return failures == 0 ? 0 : 1;
}
