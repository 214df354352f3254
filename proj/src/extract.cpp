#include "sptk/extract.hpp"

#include <algorithm>
#include <charconv>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "sptk/random.hpp"

namespace sptk {

namespace {

std::string_view base_label(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

bool is_object(std::string_view deprel) {
  const auto base = base_label(deprel);
  return base == "dobj" || base == "obj";
}

bool is_passive_subject(std::string_view deprel) {
  return deprel == "nsubjpass" || deprel == "nsubj:pass";
}

bool is_subject(std::string_view deprel, const ExtractOptions& options) {
  if (is_passive_subject(deprel)) return options.include_passive_subjects;
  return base_label(deprel) == "nsubj";
}

bool is_nominal(std::string_view upos) { return upos == "NOUN" || upos == "PROPN"; }

}  // namespace

std::vector<SPPair> extract_pairs(const Sentence& sentence, const ExtractOptions& options) {
  std::vector<SPPair> out;
  if (sentence.empty()) return out;

  // Adjectival modifiers per nominal token (by 0-based position).
  std::vector<std::vector<const Token*>> modifiers(sentence.size());
  for (const Token& t : sentence) {
    if (t.head_index == 0 || base_label(t.deprel) != "amod" || t.upos != "ADJ") continue;
    const Token& noun = sentence[t.head_index - 1];
    if (!is_nominal(noun.upos)) continue;
    modifiers[t.head_index - 1].push_back(&t);
    out.emplace_back(Relation::Amod, noun.lemma, t.lemma);
  }

  for (const Token& t : sentence) {
    if (t.head_index == 0 || !is_nominal(t.upos)) continue;
    const Token& verb = sentence[t.head_index - 1];
    if (verb.upos != "VERB") continue;
    Relation one_hop;
    Relation two_hop;
    if (is_object(t.deprel)) {
      one_hop = Relation::Dobj;
      two_hop = Relation::DobjAmod;
    } else if (is_subject(t.deprel, options)) {
      one_hop = Relation::Nsubj;
      two_hop = Relation::NsubjAmod;
    } else {
      continue;
    }
    out.emplace_back(one_hop, verb.lemma, t.lemma);
    for (const Token* adj : modifiers[t.index - 1]) {
      out.emplace_back(two_hop, verb.lemma, adj->lemma);
    }
  }
  return out;
}

void CountTable::add(const SPPair& pair, std::uint64_t count) {
  if (count == 0) return;
  HeadEntry& entry = tables_[index(pair.relation())][pair.head()];
  entry.total += count;
  entry.dependents[pair.dependent()] += count;
  instances_[index(pair.relation())] += count;
}

void CountTable::merge(const CountTable& other) {
  for (Relation r : kAllRelations) {
    RelationTable& mine = tables_[index(r)];
    for (const auto& [head, entry] : other.tables_[index(r)]) {
      HeadEntry& target = mine[head];
      target.total += entry.total;
      for (const auto& [dep, c] : entry.dependents) target.dependents[dep] += c;
    }
    instances_[index(r)] += other.instances_[index(r)];
  }
}

std::uint64_t CountTable::count(const SPPair& pair) const {
  return count(pair.relation(), pair.head(), pair.dependent());
}

std::uint64_t CountTable::count(Relation r, const std::string& head_lemma,
                                const std::string& dependent) const {
  const HeadEntry* entry = head(r, head_lemma);
  if (!entry) return 0;
  auto it = entry->dependents.find(dependent);
  return it == entry->dependents.end() ? 0 : it->second;
}

std::uint64_t CountTable::head_total(Relation r, const std::string& head_lemma) const {
  const HeadEntry* entry = head(r, head_lemma);
  return entry ? entry->total : 0;
}

const CountTable::HeadEntry* CountTable::head(Relation r, const std::string& head_lemma) const {
  const auto& t = tables_[index(r)];
  auto it = t.find(head_lemma);
  return it == t.end() ? nullptr : &it->second;
}

std::size_t CountTable::unique_pairs(Relation r) const {
  std::size_t n = 0;
  for (const auto& [head, entry] : tables_[index(r)]) n += entry.dependents.size();
  return n;
}

bool CountTable::empty() const {
  return std::all_of(instances_.begin(), instances_.end(),
                     [](std::uint64_t n) { return n == 0; });
}

namespace {

using Ranked = std::vector<std::pair<std::string, std::uint64_t>>;

void sort_ranked(Ranked& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
}

}  // namespace

Ranked CountTable::ranked_dependents(Relation r, const std::string& head_lemma) const {
  Ranked out;
  if (const HeadEntry* entry = head(r, head_lemma)) {
    out.assign(entry->dependents.begin(), entry->dependents.end());
    sort_ranked(out);
  }
  return out;
}

Ranked CountTable::ranked_heads(Relation r) const {
  Ranked out;
  for (const auto& [head_lemma, entry] : tables_[index(r)]) out.emplace_back(head_lemma, entry.total);
  sort_ranked(out);
  return out;
}

bool operator==(const CountTable& a, const CountTable& b) {
  if (a.instances_ != b.instances_) return false;
  for (Relation r : kAllRelations) {
    const auto& ta = a.table(r);
    const auto& tb = b.table(r);
    if (ta.size() != tb.size()) return false;
    for (const auto& [head, entry] : ta) {
      auto it = tb.find(head);
      if (it == tb.end() || it->second.total != entry.total ||
          it->second.dependents != entry.dependents) {
        return false;
      }
    }
  }
  return true;
}

CountTable build_counts(const std::vector<Sentence>& corpus, const ExtractOptions& options) {
  CountTable table;
  for (const Sentence& s : corpus) {
    for (const SPPair& p : extract_pairs(s, options)) table.add(p);
  }
  return table;
}

CountTable build_counts(ConlluReader& reader, const ExtractOptions& options) {
  CountTable table;
  while (auto sentence = reader.next()) {
    for (const SPPair& p : extract_pairs(*sentence, options)) table.add(p);
  }
  return table;
}

CountTable build_counts_parallel(ConlluReader& reader, unsigned threads,
                                 const ExtractOptions& options, std::size_t block_size) {
  if (threads <= 1) return build_counts(reader, options);

  std::mutex mutex;
  std::condition_variable ready;
  std::condition_variable space;
  std::deque<std::vector<Sentence>> queue;
  bool done = false;
  std::exception_ptr failure;
  const std::size_t max_queued = threads * 2;

  std::vector<CountTable> partial(threads);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      while (true) {
        std::vector<Sentence> block;
        {
          std::unique_lock lock(mutex);
          ready.wait(lock, [&] { return !queue.empty() || done; });
          if (queue.empty()) return;
          block = std::move(queue.front());
          queue.pop_front();
        }
        space.notify_one();
        for (const Sentence& s : block) {
          for (const SPPair& p : extract_pairs(s, options)) partial[w].add(p);
        }
      }
    });
  }

  try {
    std::vector<Sentence> block;
    auto flush = [&] {
      std::unique_lock lock(mutex);
      space.wait(lock, [&] { return queue.size() < max_queued; });
      queue.push_back(std::move(block));
      block.clear();
      lock.unlock();
      ready.notify_one();
    };
    while (auto sentence = reader.next()) {
      block.push_back(std::move(*sentence));
      if (block.size() >= block_size) flush();
    }
    if (!block.empty()) flush();
  } catch (...) {
    failure = std::current_exception();
  }
  {
    std::lock_guard lock(mutex);
    done = true;
  }
  ready.notify_all();
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);

  CountTable table;
  for (const CountTable& p : partial) table.merge(p);
  return table;
}

void save_counts(const CountTable& counts, const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write counts", path);
  out << kCountsHeader << '\n';
  for (const auto& [key, value] : metadata) out << '#' << key << '\t' << value << '\n';
  for (Relation r : kAllRelations) {
    std::vector<std::string> heads;
    for (const auto& [head, entry] : counts.table(r)) heads.push_back(head);
    std::sort(heads.begin(), heads.end());
    for (const auto& head : heads) {
      for (const auto& [dep, c] : counts.ranked_dependents(r, head)) {
        out << to_string(r) << '\t' << head << '\t' << dep << '\t' << c << '\n';
      }
    }
  }
  if (!out) throw Error(ErrorCode::Io, "write failed", path);
}

CountTable load_counts(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open counts", path);
  CountTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line != kCountsHeader) {
      throw Error(ErrorCode::MalformedInput,
                  "missing '" + std::string(kCountsHeader) + "' header", path, line_no);
    }
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 4) {
      throw Error(ErrorCode::MalformedInput, "expected 4 columns", path, line_no);
    }
    std::uint64_t c = 0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), c);
    if (ec != std::errc() || ptr != f[3].data() + f[3].size() || c == 0) {
      throw Error(ErrorCode::MalformedInput, "bad count '" + std::string(f[3]) + "'", path,
                  line_no);
    }
    try {
      table.add(SPPair(parse_relation(f[0]), f[1], f[2]), c);
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  return table;
}

std::string_view to_string(CandidateSource s) {
  return s == CandidateSource::Frequent ? "frequent" : "random";
}

std::vector<Candidate> generate_candidates(const CountTable& counts, const Lexicon& lexicon,
                                           Relation relation,
                                           const CandidateOptions& options) {
  if (counts.instances(relation) == 0) {
    throw Error(ErrorCode::InsufficientData,
                "no counts for relation " + std::string(to_string(relation)));
  }
  const auto& head_vocab = lexicon.words(head_pos(relation));
  const auto& dep_vocab = lexicon.words(dependent_pos(relation));
  const std::vector<std::string> pool(dep_vocab.begin(), dep_vocab.end());

  Rng rng(options.seed);
  std::vector<Candidate> out;
  std::size_t heads_taken = 0;
  for (const auto& [head, total] : counts.ranked_heads(relation)) {
    if (heads_taken == options.heads_per_relation) break;
    if (!head_vocab.empty() && !head_vocab.count(head)) continue;
    ++heads_taken;

    std::set<std::string> chosen;
    for (const auto& [dep, c] : counts.ranked_dependents(relation, head)) {
      if (chosen.size() == options.frequent_per_head) break;
      if (!dep_vocab.empty() && !dep_vocab.count(dep)) continue;
      chosen.insert(dep);
      out.push_back({SPPair(relation, head, dep), CandidateSource::Frequent});
    }

    if (options.random_per_head == 0) continue;
    std::vector<std::string> available;
    for (const auto& w : pool) {
      if (!chosen.count(w)) available.push_back(w);
    }
    if (available.size() < options.random_per_head) {
      throw Error(ErrorCode::PoolTooSmall,
                  "lexicon pool for " + std::string(to_string(dependent_pos(relation))) +
                      " has " + std::to_string(available.size()) +
                      " unused words, need " + std::to_string(options.random_per_head));
    }
    // Partial Fisher-Yates: the first k slots become a uniform sample.
    for (std::size_t k = 0; k < options.random_per_head; ++k) {
      const std::size_t j = k + uniform_index(rng, available.size() - k);
      std::swap(available[k], available[j]);
      out.push_back({SPPair(relation, head, available[k]), CandidateSource::Random});
    }
  }
  return out;
}

void save_candidates(const std::vector<Candidate>& candidates, const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write candidates", path);
  for (const auto& [key, value] : metadata) out << '#' << key << '\t' << value << '\n';
  for (const auto& c : candidates) {
    out << to_string(c.pair.relation()) << '\t' << c.pair.head() << '\t'
        << c.pair.dependent() << '\t' << to_string(c.source) << '\n';
  }
}

}  // namespace sptk
