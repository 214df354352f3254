#include "sptk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>

#include "sptk/annotate.hpp"
#include "sptk/commonsense.hpp"
#include "sptk/conllu.hpp"
#include "sptk/eval.hpp"
#include "sptk/extract.hpp"
#include "sptk/nn.hpp"
#include "sptk/scorers.hpp"
#include "sptk/winograd.hpp"
#include "text.hpp"

namespace sptk::cli {

namespace {

using nlohmann::json;
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Thrown for option combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level parse_level(const std::string& name) {
  const std::string n = to_lower(name);
  if (n == "error") return Level::Error;
  if (n == "warn" || n == "warning") return Level::Warn;
  if (n == "info") return Level::Info;
  if (n == "debug") return Level::Debug;
  throw UsageError("unknown log level '" + name + "' (error, warn, info, debug)");
}

std::string stringify(const std::string& v) { return v; }
std::string stringify(bool v) { return v ? "true" : "false"; }
std::string stringify(double v) { return detail::format_shortest(v); }
template <typename T>
  requires std::is_integral_v<T>
std::string stringify(T v) {
  return std::to_string(v);
}
std::string stringify(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Resolved option values of the active subcommand, in registration order.
class Echo {
 public:
  template <typename T>
  void track(std::string key, const T& var) {
    items_.emplace_back(std::move(key), [&var] { return stringify(var); });
  }
  Metadata lines() const {
    Metadata m;
    for (const auto& [k, f] : items_) m.emplace_back(k, f());
    return m;
  }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, f] : items_) j[k] = f();
    return j;
  }

 private:
  std::vector<std::pair<std::string, std::function<std::string()>>> items_;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Level level = Level::Warn;
  std::string subcommand;
  const Echo* echo = nullptr;

  void log(Level l, const std::string& msg) const {
    if (l > level) return;
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    err << "[" << names[static_cast<int>(l)] << "] " << msg << '\n';
  }
  Metadata metadata() const {
    Metadata m{{"tool", std::string("sptk ") + kVersion}, {"subcommand", subcommand}};
    for (auto& kv : echo->lines()) m.push_back(std::move(kv));
    return m;
  }
  json meta_json() const {
    return {{"tool", "sptk"}, {"version", kVersion}, {"subcommand", subcommand},
            {"config", echo->to_json()}};
  }
};

// Registers an option bound to `var` and records it for the config echo.
// Output paths are not echoed so that two runs differing only in where they
// write produce identical artifacts.
template <typename T>
CLI::Option* option(CLI::App* app, Echo& echo, const std::string& name, T& var,
                    const std::string& help, bool echoed = true) {
  CLI::Option* o = app->add_option("--" + name, var, help);
  if constexpr (!std::is_same_v<T, std::vector<std::string>>) o->capture_default_str();
  if (echoed) echo.track(name, var);
  return o;
}

CLI::Option* flag(CLI::App* app, Echo& echo, const std::string& name, bool& var,
                  const std::string& help) {
  CLI::Option* o = app->add_flag("--" + name, var, help);
  echo.track(name, var);
  return o;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write output", path);
  out << j.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write output", path);
  out << text;
}

std::vector<Relation> relations_from(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllRelations.begin(), kAllRelations.end()};
  std::set<Relation> picked;
  for (const auto& n : names) picked.insert(parse_relation(n));
  return {picked.begin(), picked.end()};
}

// Reads the first three tab-separated columns (relation, head, dependent) of
// each non-comment line. Gold, candidate and score files all qualify.
std::vector<SPPair> load_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open pair list", path);
  std::vector<SPPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 3) throw Error(ErrorCode::MalformedInput, "expected at least 3 columns", path, line_no);
    try {
      pairs.emplace_back(parse_relation(f[0]), f[1], f[2]);
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  return pairs;
}

// Which scorer to use and where its inputs live.
struct ModelSpec {
  std::string backend = "pp";
  std::string counts;
  std::string embeddings;
  std::string model;
  std::string table;

  void add(CLI::App* app, Echo& echo) {
    option(app, echo, "backend", backend, "Scorer: pp, ds, nn or table")
        ->check(CLI::IsMember({"pp", "ds", "nn", "table"}));
    option(app, echo, "counts", counts, "Counts file (pp, ds)");
    option(app, echo, "embeddings", embeddings, "Embedding text file (ds)");
    option(app, echo, "model", model, "Trained model JSON (nn)");
    option(app, echo, "table", table, "Score or gold TSV (table)");
  }

  std::unique_ptr<ScoreModel> build(const Context& ctx) const {
    auto need = [&](const std::string& value, const char* opt) {
      if (value.empty()) throw UsageError("--backend " + backend + " requires --" + opt);
    };
    if (backend == "pp") {
      need(counts, "counts");
      return std::make_unique<PosteriorProbabilityModel>(std::make_shared<CountTable>(load_counts(counts)));
    }
    if (backend == "ds") {
      need(counts, "counts");
      need(embeddings, "embeddings");
      auto c = std::make_shared<CountTable>(load_counts(counts));
      auto e = std::make_shared<EmbeddingTable>(load_embeddings(embeddings));
      ctx.log(Level::Info, "loaded " + std::to_string(e->size()) + " vectors of dimension " +
                               std::to_string(e->dim()));
      return std::make_unique<DistributionalSimilarityModel>(std::move(c), std::move(e));
    }
    if (backend == "nn") {
      need(model, "model");
      return std::make_unique<NeuralModel>(load_nn_model(model));
    }
    need(table, "table");
    return std::make_unique<TableModel>(load_score_table(table));
  }
};

class Command {
 public:
  virtual ~Command() = default;
  virtual int exec(Context& ctx) = 0;
  CLI::App* app = nullptr;
  Echo echo;
};

class ExtractCommand final : public Command {
 public:
  explicit ExtractCommand(CLI::App& root) {
    app = root.add_subcommand("extract", "Count SP pairs in a CoNLL-U corpus");
    option(app, echo, "in", in, "CoNLL-U input")->required()->check(CLI::ExistingFile);
    option(app, echo, "out", out, "Counts TSV output", false)->required();
    option(app, echo, "threads", threads, "Extraction worker threads")->check(CLI::Range(1u, 256u));
    flag(app, echo, "fail-fast", fail_fast, "Stop at the first malformed sentence instead of skipping it");
    flag(app, echo, "passive-subjects", passive, "Count passive subjects as nsubj");
  }

  int exec(Context& ctx) override {
    std::ifstream stream(in, std::ios::binary);
    if (!stream) throw Error(ErrorCode::Io, "cannot open corpus", in);
    ConlluReader reader(stream, in, fail_fast ? MalformedPolicy::FailFast : MalformedPolicy::SkipAndLog,
                        [&](const std::string& m) { ctx.log(Level::Warn, m); });
    ExtractOptions opts{passive};
    CountTable counts = threads > 1 ? build_counts_parallel(reader, threads, opts) : build_counts(reader, opts);
    Metadata meta = ctx.metadata();
    meta.emplace_back("sentences_read", std::to_string(reader.sentences_read()));
    meta.emplace_back("sentences_skipped", std::to_string(reader.sentences_skipped()));
    save_counts(counts, out, meta);
    ctx.out << "relation\tinstances\tunique_pairs\n";
    for (Relation r : kAllRelations) {
      ctx.out << to_string(r) << '\t' << counts.instances(r) << '\t' << counts.unique_pairs(r) << '\n';
    }
    return kExitOk;
  }

 private:
  std::string in, out;
  unsigned threads = 1;
  bool fail_fast = false;
  bool passive = false;
};

class CandidatesCommand final : public Command {
 public:
  explicit CandidatesCommand(CLI::App& root) {
    app = root.add_subcommand("candidates", "Select frequent and random candidate pairs for annotation");
    option(app, echo, "counts", counts, "Counts file")->required()->check(CLI::ExistingFile);
    option(app, echo, "lexicon", lexicon, "Lexicon file")->required()->check(CLI::ExistingFile);
    option(app, echo, "relation", relations, "Relations to sample (default: all)");
    option(app, echo, "heads", heads, "Heads per relation");
    option(app, echo, "frequent", frequent, "Frequent dependents per head");
    option(app, echo, "random", random, "Random dependents per head");
    option(app, echo, "seed", seed, "Random seed")->required();
    option(app, echo, "out", out, "Candidates TSV output", false)->required();
  }

  int exec(Context& ctx) override {
    const CountTable c = load_counts(counts);
    const Lexicon lex = load_lexicon(lexicon);
    std::vector<Candidate> all;
    for (Relation r : relations_from(relations)) {
      // Each relation gets its own stream so adding a relation does not
      // change the others.
      CandidateOptions opts{heads, frequent, random, seed + static_cast<std::uint64_t>(r)};
      auto part = generate_candidates(c, lex, r, opts);
      ctx.log(Level::Info, std::string(to_string(r)) + ": " + std::to_string(part.size()) + " candidates");
      all.insert(all.end(), part.begin(), part.end());
    }
    save_candidates(all, out, ctx.metadata());
    ctx.out << all.size() << " candidates written\n";
    return kExitOk;
  }

 private:
  std::string counts, lexicon, out;
  std::vector<std::string> relations;
  std::size_t heads = 500, frequent = 2, random = 2;
  std::uint64_t seed = 0;
};

class ScoreCommand final : public Command {
 public:
  explicit ScoreCommand(CLI::App& root) {
    app = root.add_subcommand("score", "Score a list of SP pairs");
    spec.add(app, echo);
    option(app, echo, "pairs", pairs, "Pairs TSV (relation, head, dependent, ...)")
        ->required()
        ->check(CLI::ExistingFile);
    option(app, echo, "out", out, "Scores TSV output", false)->required();
  }

  int exec(Context& ctx) override {
    auto model = spec.build(ctx);
    const auto list = load_pairs(pairs);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw Error(ErrorCode::Io, "cannot write output", out);
    os << kScoresHeader << '\n';
    for (const auto& [k, v] : ctx.metadata()) os << '#' << k << '\t' << v << '\n';
    std::size_t missing = 0;
    for (const auto& p : list) {
      auto s = model->score(p);
      if (!s) ++missing;
      os << to_string(p.relation()) << '\t' << p.head() << '\t' << p.dependent() << '\t'
         << (s ? detail::format_shortest(*s) : std::string("NA")) << '\n';
    }
    ctx.out << list.size() << " pairs scored, " << missing << " missing\n";
    return kExitOk;
  }

 private:
  ModelSpec spec;
  std::string pairs, out;
};

class TrainCommand final : public Command {
 public:
  explicit TrainCommand(CLI::App& root) {
    app = root.add_subcommand("train-nn", "Train the neural scorer on extracted counts");
    option(app, echo, "counts", counts, "Counts file")->required()->check(CLI::ExistingFile);
    option(app, echo, "lexicon", lexicon, "Lexicon file (defines the vocabulary)")
        ->required()
        ->check(CLI::ExistingFile);
    option(app, echo, "relation", relations, "Relations to train (default: all with counts)");
    option(app, echo, "embedding-dim", config.embedding_dim, "Embedding size");
    option(app, echo, "hidden-dim", config.hidden_dim, "Hidden layer size");
    option(app, echo, "margin", config.margin, "Hinge margin");
    option(app, echo, "negatives", config.negatives_per_positive, "Negatives per positive");
    option(app, echo, "epochs", config.epochs, "Training epochs");
    option(app, echo, "learning-rate", config.learning_rate, "SGD step size");
    option(app, echo, "max-count", max_count, "Cap on instances per pair (0: no cap)");
    option(app, echo, "seed", config.seed, "Random seed")->required();
    option(app, echo, "out", out, "Model JSON output", false)->required();
  }

  int exec(Context& ctx) override {
    const CountTable c = load_counts(counts);
    const Lexicon lex = load_lexicon(lexicon);
    std::vector<SPPair> instances;
    std::size_t skipped = 0;
    for (Relation r : relations_from(relations)) {
      for (const auto& [head, total] : c.ranked_heads(r)) {
        for (const auto& [dep, n] : c.ranked_dependents(r, head)) {
          if (!lex.contains(head_pos(r), head) || !lex.contains(dependent_pos(r), dep)) {
            skipped += n;
            continue;
          }
          const std::uint64_t k = max_count > 0 ? std::min<std::uint64_t>(n, max_count) : n;
          for (std::uint64_t i = 0; i < k; ++i) instances.emplace_back(r, head, dep);
        }
      }
    }
    if (skipped) ctx.log(Level::Warn, std::to_string(skipped) + " instances outside the lexicon skipped");
    if (instances.empty()) throw Error(ErrorCode::InsufficientData, "no training instances", counts);
    NeuralModel model = nn_train(instances, config, lex);
    save_nn_model(model, out, ctx.meta_json());
    ctx.out << "relation\tfinal_loss\n";
    for (const auto& [r, net] : model.networks()) {
      ctx.out << to_string(r) << '\t'
              << (net.epoch_loss.empty() ? std::string("NA") : detail::format_fixed(net.epoch_loss.back(), 6))
              << '\n';
    }
    return kExitOk;
  }

 private:
  std::string counts, lexicon, out;
  std::vector<std::string> relations;
  NNConfig config;
  std::uint64_t max_count = 0;
};

class EvalCommand final : public Command {
 public:
  explicit EvalCommand(CLI::App& root) {
    app = root.add_subcommand("eval", "Spearman correlation of a scorer against gold plausibilities");
    spec.add(app, echo);
    option(app, echo, "gold", gold, "Gold TSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "policy", policy, "Missing-score policy: floor or drop")
        ->check(CLI::IsMember({"floor", "drop"}));
    auto* against_opt =
        option(app, echo, "against", against, "Score TSV of a second model for a significance test");
    option(app, echo, "resamples", resamples, "Bootstrap resamples");
    auto* seed_opt = option(app, echo, "seed", seed, "Random seed (bootstrap)");
    against_opt->needs(seed_opt);
    option(app, echo, "out", out, "Report JSON output", false);
  }

  int exec(Context& ctx) override {
    auto model = spec.build(ctx);
    const GoldSet g = load_gold(gold);
    const EvalReport report = evaluate(*model, g, parse_missing_policy(policy));
    json j = report.to_json();
    j["meta"] = ctx.meta_json();
    ctx.out << report.to_text();
    if (!against.empty()) {
      const TableModel other = load_score_table(against);
      json sig = json::object();
      for (Relation r : kAllRelations) {
        const auto entries = g.relation(r);
        if (entries.empty()) continue;
        auto a = floor_imputed_scores(*model, entries);
        auto b = floor_imputed_scores(other, entries);
        std::vector<double> truth;
        for (const auto& e : entries) truth.push_back(e.plausibility.value());
        const std::string name(to_string(r));
        if (!a || !b) {
          sig[name] = nullptr;
          continue;
        }
        try {
          const double p = significance(*a, *b, truth, resamples, seed);
          sig[name] = p;
          ctx.out << "p(" << name << ", model better than --against) = " << detail::format_fixed(p, 4) << '\n';
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InsufficientData && e.code() != ErrorCode::ConstantInput) throw;
          ctx.log(Level::Warn, name + ": " + e.message());
          sig[name] = nullptr;
        }
      }
      j["significance"] = std::move(sig);
    }
    if (!out.empty()) write_json(out, j);
    return kExitOk;
  }

 private:
  ModelSpec spec;
  std::string gold, against, out;
  std::string policy = "floor";
  std::size_t resamples = 10000;
  std::uint64_t seed = 0;
};

class PseudoCommand final : public Command {
 public:
  explicit PseudoCommand(CLI::App& root) {
    app = root.add_subcommand("pseudo", "Pseudo-disambiguation accuracy on held-out pairs");
    spec.add(app, echo);
    option(app, echo, "test", test, "Held-out positive pairs TSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "lexicon", lexicon, "Lexicon for confounders")->required()->check(CLI::ExistingFile);
    option(app, echo, "seed", seed, "Random seed")->required();
    option(app, echo, "out", out, "Report JSON output", false);
  }

  int exec(Context& ctx) override {
    auto model = spec.build(ctx);
    const auto pairs = load_pairs(test);
    const Lexicon lex = load_lexicon(lexicon);
    json j;
    j["meta"] = ctx.meta_json();
    json rels = json::object();
    ctx.out << "relation\tpairs\taccuracy\n";
    for (Relation r : kAllRelations) {
      std::vector<SPPair> subset;
      for (const auto& p : pairs) {
        if (p.relation() == r) subset.push_back(p);
      }
      if (subset.empty()) continue;
      const double acc = pseudo_disambiguation(*model, subset, lex, seed);
      rels[std::string(to_string(r))] = {{"pairs", subset.size()}, {"accuracy", acc}};
      ctx.out << to_string(r) << '\t' << subset.size() << '\t' << detail::format_fixed(acc, 4) << '\n';
    }
    const double overall = pseudo_disambiguation(*model, pairs, lex, seed);
    ctx.out << "overall\t" << pairs.size() << '\t' << detail::format_fixed(overall, 4) << '\n';
    j["relations"] = std::move(rels);
    j["overall"] = overall;
    if (!out.empty()) write_json(out, j);
    return kExitOk;
  }

 private:
  ModelSpec spec;
  std::string test, lexicon, out;
  std::uint64_t seed = 0;
};

void add_filter_report(json& j, const FilterResult& f) {
  json rejected = json::array();
  for (const auto& r : f.rejected) rejected.push_back({{"annotator", r.annotator_id}, {"reason", r.reason}});
  j["rejected_annotators"] = std::move(rejected);
  j["kept_ratings"] = f.kept.size();
}

class AggregateCommand final : public Command {
 public:
  explicit AggregateCommand(CLI::App& root) {
    app = root.add_subcommand("aggregate", "Filter annotators and average ratings into plausibilities");
    option(app, echo, "ratings", ratings, "Ratings CSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "min-ratings", min_ratings, "Ratings needed to aggregate a pair");
    flag(app, echo, "no-filter", no_filter, "Keep every annotator");
    option(app, echo, "out", out, "Gold TSV output", false)->required();
    option(app, echo, "report", report, "Filtering report JSON output", false);
  }

  int exec(Context& ctx) override {
    const auto raw = load_ratings(ratings);
    FilterResult f = no_filter ? FilterResult{raw, {}} : filter_annotations(raw);
    const Aggregation agg = aggregate(f.kept, min_ratings);
    GoldSet g;
    for (const auto& [pair, value] : agg.plausibility) g.add(pair, Plausibility(value));
    save_gold(g, out, ctx.metadata());
    ctx.out << "annotators rejected: " << f.rejected.size() << '\n'
            << "pairs aggregated: " << agg.plausibility.size() << '\n'
            << "pairs below threshold: " << agg.insufficient.size() << '\n';
    if (!report.empty()) {
      json j;
      j["meta"] = ctx.meta_json();
      add_filter_report(j, f);
      json low = json::array();
      for (const auto& [pair, n] : agg.insufficient) {
        low.push_back({{"relation", std::string(to_string(pair.relation()))},
                       {"head", pair.head()},
                       {"dependent", pair.dependent()},
                       {"ratings", n}});
      }
      j["below_threshold"] = std::move(low);
      write_json(report, j);
    }
    return kExitOk;
  }

 private:
  std::string ratings, out, report;
  std::size_t min_ratings = 10;
  bool no_filter = false;
};

class IaaCommand final : public Command {
 public:
  explicit IaaCommand(CLI::App& root) {
    app = root.add_subcommand("iaa", "Leave-one-out inter-annotator agreement");
    option(app, echo, "ratings", ratings, "Ratings CSV")->required()->check(CLI::ExistingFile);
    flag(app, echo, "no-filter", no_filter, "Keep every annotator");
    option(app, echo, "out", out, "Report JSON output", false);
  }

  int exec(Context& ctx) override {
    const auto raw = load_ratings(ratings);
    FilterResult f = no_filter ? FilterResult{raw, {}} : filter_annotations(raw);
    const IaaResult r = iaa(f.kept);
    ctx.out << "relation\tannotators\trho\n";
    for (const auto& [rel, v] : r.per_relation) {
      ctx.out << to_string(rel) << '\t' << r.annotators.at(rel) << '\t' << detail::format_fixed(v, 4) << '\n';
    }
    ctx.out << "overall\t-\t" << detail::format_fixed(r.overall, 4) << '\n';
    if (!out.empty()) {
      json j = r.to_json();
      j["meta"] = ctx.meta_json();
      add_filter_report(j, f);
      write_json(out, j);
    }
    return kExitOk;
  }

 private:
  std::string ratings, out;
  bool no_filter = false;
};

class SurveyCommand final : public Command {
 public:
  explicit SurveyCommand(CLI::App& root) {
    app = root.add_subcommand("survey", "Build one annotation survey");
    option(app, echo, "pairs", pairs, "TSV with the 100 pairs")->required()->check(CLI::ExistingFile);
    option(app, echo, "checkpoints", checkpoints, "TSV with the 3 checkpoint pairs")
        ->required()
        ->check(CLI::ExistingFile);
    option(app, echo, "seed", seed, "Random seed")->required();
    option(app, echo, "out", out, "Survey JSON output", false)->required();
  }

  int exec(Context& ctx) override {
    const auto p = load_pairs(pairs);
    const auto c = load_pairs(checkpoints);
    const Survey s = generate_survey(p, c, seed);
    json j = s.to_json();
    j["meta"] = ctx.meta_json();
    write_json(out, j);
    ctx.out << s.questions.size() << " questions (" << to_string(s.relation) << ")\n";
    return kExitOk;
  }

 private:
  std::string pairs, checkpoints, out;
  std::uint64_t seed = 0;
};

class OmcsMatchCommand final : public Command {
 public:
  explicit OmcsMatchCommand(CLI::App& root) {
    app = root.add_subcommand("omcs-match", "Match gold pairs against commonsense triplets by plausibility group");
    option(app, echo, "gold", gold, "Gold TSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "omcs", omcs, "Triplet TSV")->required()->check(CLI::ExistingFile);
    flag(app, echo, "no-lemmatize", no_lemmatize, "Match surface tokens only");
    option(app, echo, "out", out, "Coverage JSON output", false);
    option(app, echo, "matches", matches, "Per-pair match CSV output", false);
  }

  int exec(Context& ctx) override {
    const GoldSet g = load_gold(gold);
    const OMCSIndex index(load_omcs(omcs), !no_lemmatize);
    const auto rows = coverage_by_group(g, index);
    ctx.out << coverage_to_text(rows);
    if (!out.empty()) {
      json j;
      j["meta"] = ctx.meta_json();
      j["groups"] = coverage_to_json(rows);
      write_json(out, j);
    }
    if (!matches.empty()) {
      std::ostringstream os;
      os << "relation,head,dependent,plausibility,group,kind,witness\n";
      for (const auto& e : g.entries()) {
        const MatchResult m = index.match(e.pair);
        os << to_string(e.pair.relation()) << ',' << e.pair.head() << ',' << e.pair.dependent() << ','
           << detail::format_fixed(e.plausibility.value(), 2) << ','
           << to_string(plausibility_group(e.plausibility.value())) << ',' << to_string(m.kind) << ',';
        if (m.witness) os << '"' << m.witness->start_text() << '|' << m.witness->relation << '|' << m.witness->end_text() << '"';
        os << '\n';
      }
      write_text(matches, os.str());
    }
    return kExitOk;
  }

 private:
  std::string gold, omcs, out, matches;
  bool no_lemmatize = false;
};

class OmcsMatrixCommand final : public Command {
 public:
  explicit OmcsMatrixCommand(CLI::App& root) {
    app = root.add_subcommand("omcs-matrix", "SP relation x commonsense relation match counts");
    option(app, echo, "gold", gold, "Gold TSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "omcs", omcs, "Triplet TSV")->required()->check(CLI::ExistingFile);
    flag(app, echo, "no-lemmatize", no_lemmatize, "Match surface tokens only");
    option(app, echo, "out", out, "Matrix CSV output", false)->required();
    option(app, echo, "json", json_out, "Matrix JSON output", false);
  }

  int exec(Context& ctx) override {
    const GoldSet g = load_gold(gold);
    const OMCSIndex index(load_omcs(omcs), !no_lemmatize);
    const RelationMatrix m = relation_matrix(g, index);
    std::string csv;
    for (const auto& [k, v] : ctx.metadata()) csv += "# " + k + "=" + v + "\n";
    csv += m.to_csv();
    write_text(out, csv);
    if (!json_out.empty()) {
      json j = m.to_json();
      j["meta"] = ctx.meta_json();
      write_json(json_out, j);
    }
    ctx.out << m.total() << " matched tuples over " << m.omcs_relations.size() << " relations\n";
    return kExitOk;
  }

 private:
  std::string gold, omcs, out, json_out;
  bool no_lemmatize = false;
};

class WinogradCommand final : public Command {
 public:
  explicit WinogradCommand(CLI::App& root) {
    app = root.add_subcommand("winograd", "Resolve adjective Winograd questions with two-hop SP scores");
    spec.add(app, echo);
    option(app, echo, "gold", gold, "Use gold plausibilities as the scorer");
    option(app, echo, "questions", questions, "Questions JSON")->required()->check(CLI::ExistingFile);
    option(app, echo, "out", out, "Summary JSON output", false);
    option(app, echo, "csv", csv, "Per-question CSV output", false);
  }

  int exec(Context& ctx) override {
    std::unique_ptr<ScoreModel> model;
    if (!gold.empty()) {
      model = std::make_unique<TableModel>(load_gold(gold).as_model());
    } else {
      model = spec.build(ctx);
    }
    const auto qs = load_questions(questions);
    std::vector<Prediction> preds;
    for (const auto& q : qs) preds.push_back(resolve(q, *model));
    const Accuracy a = score_accuracy(preds);
    ctx.out << "correct\twrong\tna\tAp\tAo\n"
            << a.correct << '\t' << a.wrong << '\t' << a.na << '\t'
            << (a.ap ? detail::format_fixed(100.0 * *a.ap, 1) + "%" : std::string("undefined")) << '\t'
            << detail::format_fixed(100.0 * a.ao, 1) << "%\n";
    if (!out.empty()) {
      json j = a.to_json();
      j["meta"] = ctx.meta_json();
      write_json(out, j);
    }
    if (!csv.empty()) write_text(csv, predictions_to_csv(qs, preds));
    return kExitOk;
  }

 private:
  ModelSpec spec;
  std::string gold, questions, out, csv;
};

class ImportSp10kCommand final : public Command {
 public:
  explicit ImportSp10kCommand(CLI::App& root) {
    app = root.add_subcommand("import-sp10k", "Convert per-relation annotation files into a gold TSV");
    option(app, echo, "dir", dir, "Directory of per-relation files")->required()->check(CLI::ExistingDirectory);
    option(app, echo, "order", order, "Word order in the files: natural or head-first")
        ->check(CLI::IsMember({"natural", "head-first"}));
    option(app, echo, "out", out, "Gold TSV output", false)->required();
  }

  int exec(Context& ctx) override {
    const GoldSet g = import_sp10k(dir, order == "natural" ? PairOrder::Natural : PairOrder::HeadFirst);
    save_gold(g, out, ctx.metadata());
    ctx.out << g.size() << " pairs imported\n";
    return kExitOk;
  }

 private:
  std::string dir, out;
  std::string order = "natural";
};

class ImportConceptNetCommand final : public Command {
 public:
  explicit ImportConceptNetCommand(CLI::App& root) {
    app = root.add_subcommand("import-conceptnet", "Filter a ConceptNet 5 dump to English OMCS triplets");
    option(app, echo, "in", in, "Assertions CSV")->required()->check(CLI::ExistingFile);
    option(app, echo, "out", out, "Triplet TSV output", false)->required();
  }

  int exec(Context& ctx) override {
    const auto stats = import_conceptnet(in, out);
    ctx.out << stats.lines << " lines read, " << stats.kept << " triplets kept, " << stats.duplicates
            << " duplicates dropped\n";
    return kExitOk;
  }

 private:
  std::string in, out;
};

std::string version_text() {
  return std::string("sptk ") + kVersion + "\n" + "counts " + kCountsHeader + "\n" + "gold " + kGoldHeader +
         "\n" + "scores " + kScoresHeader + "\n" + "nn-model sptk-nn v1\n" +
         "winograd-questions schema_version " + std::to_string(kQuestionsSchemaVersion);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Selectional preference toolkit", "sptk");
  app.require_subcommand(1);
  app.set_version_flag("--version", version_text());
  app.set_config("--config", "", "Config file (TOML-style key = value, [subcommand] sections)");
  std::string log_level;
  app.add_option("--log-level", log_level, "error, warn, info or debug (overrides SPTK_LOG_LEVEL)");

  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<ExtractCommand>(app));
  commands.push_back(std::make_unique<CandidatesCommand>(app));
  commands.push_back(std::make_unique<ScoreCommand>(app));
  commands.push_back(std::make_unique<TrainCommand>(app));
  commands.push_back(std::make_unique<EvalCommand>(app));
  commands.push_back(std::make_unique<PseudoCommand>(app));
  commands.push_back(std::make_unique<AggregateCommand>(app));
  commands.push_back(std::make_unique<IaaCommand>(app));
  commands.push_back(std::make_unique<SurveyCommand>(app));
  commands.push_back(std::make_unique<OmcsMatchCommand>(app));
  commands.push_back(std::make_unique<OmcsMatrixCommand>(app));
  commands.push_back(std::make_unique<WinogradCommand>(app));
  commands.push_back(std::make_unique<ImportSp10kCommand>(app));
  commands.push_back(std::make_unique<ImportConceptNetCommand>(app));

  std::vector<const char*> argv{"sptk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    for (const auto& c : commands) {
      if (c->app->parsed()) failed = c->app;
    }
    err << failed->help(failed == &app ? "" : "sptk");
    return kExitUsage;
  }

  try {
    Context ctx{out, err, Level::Warn, {}, nullptr};
    if (!log_level.empty()) {
      ctx.level = parse_level(log_level);
    } else if (const char* env = std::getenv("SPTK_LOG_LEVEL"); env && *env) {
      ctx.level = parse_level(env);
    }
    for (const auto& c : commands) {
      if (!c->app->parsed()) continue;
      ctx.subcommand = c->app->get_name();
      ctx.echo = &c->echo;
      ctx.log(Level::Debug, "running " + ctx.subcommand);
      return c->exec(ctx);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sptk::cli
