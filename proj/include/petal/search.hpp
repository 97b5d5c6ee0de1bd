#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "petal/error.hpp"
#include "petal/fingerprint.hpp"
#include "petal/knot_table.hpp"
#include "petal/sequence.hpp"

namespace petal {

// Canonical forms are exactly the sequences starting at 1 whose second entry
// is below the last one, so there are (p-1)!/2 of them for p >= 3.
inline std::uint64_t canonical_count(int p) {
  if (p < 3) return 1;
  std::uint64_t f = 1;
  for (int k = 2; k < p; ++k) f *= static_cast<std::uint64_t>(k);
  return f / 2;
}

namespace detail {

inline void check_petal_count(int p) {
  if (p < 1) throw Error(ErrorKind::Empty, "petal count must be positive");
  if (p % 2 == 0) throw Error(ErrorKind::EvenLength, "petal count " + std::to_string(p) + " is even");
}

// Work units: the fixed prefix (1, a2[, a3]). Listed in lexicographic order.
inline std::vector<std::vector<int>> search_chunks(int p) {
  std::vector<std::vector<int>> out;
  if (p < 5) {
    out.push_back({1});
    return out;
  }
  for (int a2 = 2; a2 < p; ++a2)
    for (int a3 = 2; a3 <= p; ++a3)
      if (a3 != a2) out.push_back({1, a2, a3});
  return out;
}

// Canonical sequences with the given prefix, in lexicographic order.
template <typename Fn>
void for_each_in_chunk(int p, const std::vector<int>& prefix, Fn&& fn) {
  if (p == 1) {
    fn(PetalSequence{});
    return;
  }
  std::vector<int> v = prefix;
  std::vector<bool> used(static_cast<std::size_t>(p) + 1, false);
  for (int x : prefix) used[static_cast<std::size_t>(x)] = true;
  for (int x = 1; x <= p; ++x)
    if (!used[static_cast<std::size_t>(x)]) v.push_back(x);
  const auto tail = static_cast<std::ptrdiff_t>(prefix.size());
  do {
    if (v[1] < v.back()) fn(PetalSequence::validate(v));
  } while (std::next_permutation(v.begin() + tail, v.end()));
}

}  // namespace detail

// Streams every canonical sequence of length p once, in lexicographic order.
template <typename Fn>
void for_each_sequence(int p, Fn&& fn) {
  detail::check_petal_count(p);
  for (const auto& chunk : detail::search_chunks(p)) detail::for_each_in_chunk(p, chunk, fn);
}

inline std::vector<PetalSequence> enumerate_sequences(int p) {
  std::vector<PetalSequence> out;
  for_each_sequence(p, [&](const PetalSequence& s) { out.push_back(s); });
  return out;
}

struct SearchOptions {
  bool skip_reducible = true;    // reducible sequences are not witnesses for p
  bool keep_sequences = true;    // store identified witnesses (off for huge runs)
  unsigned jobs = 1;
  std::uint64_t max_sequences = 0;  // 0 = unlimited
  double max_seconds = 0;           // 0 = unlimited
  std::function<void(std::size_t done, std::size_t total)> progress;  // per finished chunk
};

struct ClassificationReport {
  int petals = 0;
  std::uint64_t examined = 0;  // canonical sequences fingerprinted
  std::uint64_t skipped = 0;   // reducible sequences left out
  std::map<std::string, std::vector<PetalSequence>> identified;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::pair<PetalSequence, Fingerprint>> unidentified;

  std::set<std::string> names() const {
    std::set<std::string> out;
    for (const auto& [n, c] : counts) out.insert(n);
    return out;
  }
};

namespace detail {

struct ChunkResult {
  std::uint64_t examined = 0, skipped = 0;
  std::vector<std::pair<std::string, PetalSequence>> hits;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::pair<PetalSequence, Fingerprint>> misses;
};

// Runs fn(chunk_index, result) over all chunks on `jobs` threads. Results are
// kept per chunk so merging in chunk order is independent of scheduling.
template <typename R, typename Fn>
std::vector<R> run_chunks(std::size_t count, unsigned jobs, const SearchOptions& opts, Fn&& fn) {
  std::vector<R> results(count);
  std::atomic<std::size_t> next{0}, done{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::mutex progress_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i, results[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (opts.progress) {
        std::lock_guard lock(progress_mu);
        opts.progress(d, count);
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

class Budget {
 public:
  explicit Budget(const SearchOptions& o) : opts_(o), start_(std::chrono::steady_clock::now()) {}
  void charge() {
    const std::uint64_t n = ++count_;
    if (opts_.max_sequences && n > opts_.max_sequences)
      throw Error(ErrorKind::BudgetExceeded, "sequence cap of " + std::to_string(opts_.max_sequences) + " reached");
    if (opts_.max_seconds > 0 && (n & 255) == 0) {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (s > opts_.max_seconds)
        throw Error(ErrorKind::BudgetExceeded, "time budget of " + std::to_string(opts_.max_seconds) + " s exceeded");
    }
  }

 private:
  const SearchOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> count_{0};
};

}  // namespace detail

// Fingerprints every canonical sequence of length p and buckets it by
// identification. Jones is computed first; Alexander only to confirm a Jones
// hit or to describe an unidentified sequence.
inline ClassificationReport classify_all(int p, const KnotDatabase& db, const SearchOptions& opts = {}) {
  detail::check_petal_count(p);
  const auto chunks = detail::search_chunks(p);
  detail::Budget budget(opts);
  auto results = detail::run_chunks<detail::ChunkResult>(
      chunks.size(), opts.jobs, opts, [&](std::size_t i, detail::ChunkResult& r) {
        detail::for_each_in_chunk(p, chunks[i], [&](const PetalSequence& s) {
          budget.charge();
          if (opts.skip_reducible && is_reducible(s)) {
            ++r.skipped;
            return;
          }
          ++r.examined;
          const PlanarDiagram d = sequence_to_pd(s);
          Polynomial j = jones_fast(d);
          if (db.jones_known(j)) {
            const Fingerprint f = make_fingerprint(std::move(j), alexander(d));
            const auto ids = db.identify(f);
            if (!ids.empty()) {
              for (const auto& id : ids) {
                ++r.counts[id.name];
                if (opts.keep_sequences) r.hits.emplace_back(id.name, s);
              }
              return;
            }
            r.misses.emplace_back(s, f);
            return;
          }
          r.misses.emplace_back(s, make_fingerprint(std::move(j), alexander(d)));
        });
      });
  ClassificationReport report;
  report.petals = p;
  for (auto& r : results) {
    report.examined += r.examined;
    report.skipped += r.skipped;
    for (auto& [name, s] : r.hits) report.identified[name].push_back(std::move(s));
    for (auto& [name, c] : r.counts) report.counts[name] += c;
    for (auto& m : r.misses) report.unidentified.push_back(std::move(m));
  }
  if (!opts.keep_sequences)
    for (auto& [name, c] : report.counts) report.identified.try_emplace(name);
  return report;
}

// All canonical sequences of length p whose fingerprint is f or its mirror.
inline std::vector<PetalSequence> find_representations(int p, const Fingerprint& f, const SearchOptions& opts = {}) {
  detail::check_petal_count(p);
  const Fingerprint m = f.mirrored();
  const auto chunks = detail::search_chunks(p);
  detail::Budget budget(opts);
  auto results = detail::run_chunks<std::vector<PetalSequence>>(
      chunks.size(), opts.jobs, opts, [&](std::size_t i, std::vector<PetalSequence>& r) {
        detail::for_each_in_chunk(p, chunks[i], [&](const PetalSequence& s) {
          budget.charge();
          const PlanarDiagram d = sequence_to_pd(s);
          const Polynomial j = jones_fast(d);
          if (j != f.jones && j != m.jones) return;
          const Polynomial a = alexander(d);
          if (a == f.alexander) r.push_back(s);
        });
      });
  std::vector<PetalSequence> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

struct PetalNumberResult {
  int petals = 0;
  std::vector<PetalSequence> witnesses;
};

inline PetalNumberResult petal_number(const KnotRecord& target, int p_max, const SearchOptions& opts = {}) {
  for (int p = 1; p <= p_max; p += 2) {
    auto w = find_representations(p, target.fingerprint, opts);
    if (!w.empty()) return {p, std::move(w)};
  }
  throw Error(ErrorKind::NotFound, target.name + " has no petal representation with at most " +
                                       std::to_string(p_max) + " petals");
}

struct TableRowCheck {
  std::string name;
  int table_petals = 0;
  bool sequence_identifies = false;  // (a)
  bool minimality_checked = false;   // (b) was run
  bool absent_below = false;         // (b) result
  bool pass() const { return sequence_identifies && (!minimality_checked || absent_below); }
};

struct TableReport {
  int p_max = 0;
  std::vector<TableRowCheck> rows;
  std::map<int, std::set<std::string>> representable;  // knots with some representation at <= p
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const TableRowCheck& r) { return r.pass(); });
  }
};

// (a) every table sequence up to p_max identifies as its knot; (b) no
// sequence with table_petals - 2 petals represents it, provided that length
// is at most `exhaustive_max`. Every reducible sequence reduces to a shorter
// one of the same knot, so the knots representable with at most q petals are
// the union of the irreducible classifications for q' <= q.
inline TableReport verify_table(const KnotDatabase& db, int p_max, int exhaustive_max, SearchOptions opts = {}) {
  TableReport report;
  report.p_max = p_max;
  opts.skip_reducible = true;
  opts.keep_sequences = false;
  std::set<std::string> so_far;
  int needed = 0;
  for (const auto& r : db.records())
    if (r.table_petal_number <= p_max) needed = std::max(needed, r.table_petal_number - 2);
  needed = std::min(needed, exhaustive_max);
  for (int q = 1; q <= needed; q += 2) {
    for (const auto& n : classify_all(q, db, opts).names()) so_far.insert(n);
    report.representable[q] = so_far;
  }
  for (const auto& r : db.records()) {
    if (r.table_petal_number > p_max) continue;
    TableRowCheck row;
    row.name = r.name;
    row.table_petals = r.table_petal_number;
    row.sequence_identifies = db.identifies_as(sequence_fingerprint(r.table_sequence), r.name);
    const int below = r.table_petal_number - 2;
    if (below < 1) {
      row.minimality_checked = true;
      row.absent_below = true;
    } else if (below <= exhaustive_max) {
      row.minimality_checked = true;
      row.absent_below = !report.representable.at(below).contains(r.name);
    }
    report.rows.push_back(row);
  }
  return report;
}

inline nlohmann::json report_to_json(const ClassificationReport& r) {
  nlohmann::json ident = nlohmann::json::object();
  for (const auto& [name, seqs] : r.identified) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : seqs) list.push_back(std::vector<int>(s.levels().begin(), s.levels().end()));
    ident[name] = {{"count", r.counts.count(name) ? r.counts.at(name) : 0}, {"sequences", list}};
  }
  nlohmann::json unident = nlohmann::json::array();
  for (const auto& [s, f] : r.unidentified)
    unident.push_back({{"sequence", std::vector<int>(s.levels().begin(), s.levels().end())},
                       {"fingerprint", fingerprint_to_json(f)}});
  return {{"petals", r.petals}, {"examined", r.examined}, {"skipped_reducible", r.skipped},
          {"identified", ident}, {"unidentified", unident}};
}

inline nlohmann::json table_report_to_json(const TableReport& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"name", r.name},
                    {"petals", r.table_petals},
                    {"sequence_identifies", r.sequence_identifies},
                    {"minimality_checked", r.minimality_checked},
                    {"absent_below", r.absent_below},
                    {"pass", r.pass()}});
  return {{"p_max", t.p_max}, {"all_pass", t.all_pass()}, {"rows", rows}};
}

}  // namespace petal
