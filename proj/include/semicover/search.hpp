#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "semicover/core.hpp"
#include "semicover/delta.hpp"
#include "semicover/enumeration.hpp"
#include "semicover/io.hpp"
#include "semicover/report.hpp"
#include "semicover/theorems.hpp"

namespace semicover {

struct CampaignConfig {
  unsigned order_min = 1;
  unsigned order_max = 4;
  std::optional<unsigned> exact_cells; // absent = all partitions
  bool run_theorem1 = true;
  bool run_theorem2 = true;
  bool run_theorem3 = true;
  bool run_exact = true;
  bool anti_iso_dedup = false;
  unsigned jobs = 1;
  std::string out_path;        // empty: records are not written anywhere
  std::string checkpoint_path; // empty: no checkpointing
  unsigned checkpoint_interval = 1; // flush cadence, in classes
};

struct CampaignSummary {
  std::uint64_t classes = 0;         // evaluated this run
  std::uint64_t skipped_classes = 0; // already in the checkpoint
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0; // pairs with best exact value > cell count
  std::optional<long long> max_gap; // max over pairs of (best value - cell count)
  std::map<unsigned, std::uint64_t> classes_by_order;
  std::map<std::string, std::uint64_t> tightness; // theorem2 "|K|/n" -> count
};

/// Everything the campaign computes for one (class, partition) pair. The
/// theorem constructions verify their own certificates and throw on failure,
/// so a returned record's certificates are sound by construction.
/// Precondition: t is its own canonical representative and key is its
/// canonical key (true for every table the enumerator emits); records store
/// only the key, so certificates re-verify against the rebuilt table.
inline ReportRecord evaluate_pair(const CayleyTable& t, const std::string& key,
                                  const Partition& P, const CampaignConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  ReportRecord r;
  r.key = key;
  r.order = t.order();
  r.partition = P.code();
  if (cfg.run_exact) {
    CellCovSummary s = min_cov_over_cells(P, t);
    for (unsigned i = 0; i < P.size(); ++i) {
      CellReport c;
      c.delta = delta(P.cell(i), t).elements();
      c.cov_defined = s.per_cell[i].defined;
      c.cov = s.per_cell[i].value;
      r.cells.push_back(std::move(c));
    }
    r.best_cell = s.best_cell;
    r.best_value = s.best_value;
    r.pass = s.best_value && *s.best_value <= P.size();
  } else {
    for (unsigned i = 0; i < P.size(); ++i) {
      CellReport c;
      SubsetMask D = delta(P.cell(i), t);
      c.delta = D.elements();
      c.cov_defined = set_quotient(t.full_mask(), D, t) == t.full_mask();
      r.cells.push_back(std::move(c));
    }
    // Without the exact solver, pass records only what the certificates
    // guarantee (they throw when unsound), so it stays true vacuously.
    r.pass = true;
  }
  if (cfg.run_theorem1) {
    WitnessTrace tr = witness_theorem1(P, t);
    Theorem1Report rep;
    rep.certificate = tr.certificate;
    rep.k_size = tr.certificate.witness.size();
    rep.f_bound = tr.claimed_bound.str();
    r.theorem1 = std::move(rep);
  }
  if (cfg.run_theorem2) {
    CoverCertificate cert = witness_theorem2(P, t);
    r.theorem2 = Theorem2Report{cert, cert.witness.size()};
  }
  if (cfg.run_theorem3) {
    auto cert = witness_theorem3(P, t);
    r.theorem3 = Theorem3Report{cert.has_value(), cert};
  }
  r.wall_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return r;
}

namespace detail {

/// Minimal bounded MPMC queue. close() wakes everyone; pop returns nothing
/// once closed and drained; push drops when closed (the campaign is aborting).
template <typename T>
class BlockingQueue {
 public:
  explicit BlockingQueue(std::size_t cap) : cap_(cap) {}

  bool push(T item) {
    std::unique_lock lk(mu_);
    cv_room_.wait(lk, [&] { return closed_ || q_.size() < cap_; });
    if (closed_) return false;
    q_.push_back(std::move(item));
    cv_data_.notify_one();
    return true;
  }

  std::optional<T> pop() {
    std::unique_lock lk(mu_);
    cv_data_.wait(lk, [&] { return closed_ || !q_.empty(); });
    if (q_.empty()) return std::nullopt;
    T item = std::move(q_.front());
    q_.pop_front();
    cv_room_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lk(mu_);
    closed_ = true;
    cv_data_.notify_all();
    cv_room_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_data_, cv_room_;
  std::deque<T> q_;
  std::size_t cap_;
  bool closed_ = false;
};

struct ClassJob {
  CayleyTable table;
  std::string key;
};

struct ClassResult {
  std::string key;
  std::vector<std::string> lines;
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  std::optional<long long> max_gap;
  std::map<std::string, std::uint64_t> tightness;
};

} // namespace detail

/// Runs an exhaustive campaign: every isomorphism class in the order range,
/// crossed with every partition in the configured mode. Workers evaluate
/// independent classes; a single writer appends JSON lines and checkpoint
/// keys (a class's records always land before its key, so resume semantics
/// are at-least-once). Any certificate verification failure aborts the whole
/// campaign with the original exception.
inline CampaignSummary run_campaign(const CampaignConfig& cfg) {
  if (cfg.order_min == 0 || cfg.order_max > kMaxEnumOrder ||
      cfg.order_min > cfg.order_max)
    throw std::invalid_argument("run_campaign: bad order range");
  if (cfg.jobs == 0) throw std::invalid_argument("run_campaign: jobs must be >= 1");
  if (cfg.checkpoint_interval == 0)
    throw std::invalid_argument("run_campaign: checkpoint interval must be >= 1");
  if (cfg.exact_cells && *cfg.exact_cells == 0)
    throw std::invalid_argument("run_campaign: cell count must be >= 1");

  std::unordered_set<std::string> done_keys;
  if (!cfg.checkpoint_path.empty()) {
    std::ifstream ck(cfg.checkpoint_path);
    std::string line;
    while (std::getline(ck, line))
      if (!line.empty()) done_keys.insert(line);
  }

  std::ofstream out;
  if (!cfg.out_path.empty()) {
    auto mode = done_keys.empty() ? std::ios::trunc : std::ios::app;
    out.open(cfg.out_path, mode);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  }
  std::ofstream ckpt;
  if (!cfg.checkpoint_path.empty()) {
    ckpt.open(cfg.checkpoint_path, std::ios::app);
    if (!ckpt)
      throw std::runtime_error("cannot open checkpoint file: " + cfg.checkpoint_path);
  }

  detail::BlockingQueue<detail::ClassJob> jobs(64);
  detail::BlockingQueue<detail::ClassResult> results(64);

  std::mutex err_mu;
  std::exception_ptr first_error;
  auto record_error = [&](std::exception_ptr e) {
    std::lock_guard lk(err_mu);
    if (!first_error) first_error = e;
    jobs.close();
    results.close();
  };

  auto worker = [&] {
    try {
      while (auto job = jobs.pop()) {
        detail::ClassResult res;
        res.key = job->key;
        for_each_partition(job->table.order(), cfg.exact_cells, [&](const Partition& P) {
          ReportRecord rec = evaluate_pair(job->table, job->key, P, cfg);
          ++res.pairs;
          if (rec.best_value) {
            long long gap = static_cast<long long>(*rec.best_value) -
                            static_cast<long long>(P.size());
            if (!res.max_gap || gap > *res.max_gap) res.max_gap = gap;
          }
          if (cfg.run_exact && !rec.pass) ++res.violations;
          if (rec.theorem2)
            ++res.tightness[std::to_string(rec.theorem2->k_size) + "/" +
                            std::to_string(P.size())];
          res.lines.push_back(record_to_line(rec));
        });
        if (!results.push(std::move(res))) return;
      }
    } catch (...) {
      record_error(std::current_exception());
    }
  };

  CampaignSummary summary;
  auto writer = [&] {
    try {
      std::vector<std::string> pending_keys;
      auto flush = [&] {
        if (out.is_open()) out.flush();
        if (ckpt.is_open()) {
          for (const auto& k : pending_keys) ckpt << k << '\n';
          ckpt.flush();
        }
        pending_keys.clear();
      };
      while (auto res = results.pop()) {
        if (out.is_open())
          for (const auto& line : res->lines) out << line << '\n';
        ++summary.classes;
        summary.pairs += res->pairs;
        summary.violations += res->violations;
        if (res->max_gap && (!summary.max_gap || *res->max_gap > *summary.max_gap))
          summary.max_gap = *res->max_gap;
        for (const auto& [k, v] : res->tightness) summary.tightness[k] += v;
        pending_keys.push_back(res->key);
        if (pending_keys.size() >= cfg.checkpoint_interval) flush();
      }
      flush();
    } catch (...) {
      record_error(std::current_exception());
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(cfg.jobs);
  for (unsigned i = 0; i < cfg.jobs; ++i) pool.emplace_back(worker);
  std::thread writer_thread(writer);

  std::uint64_t skipped = 0;
  std::map<unsigned, std::uint64_t> by_order;
  EnumOptions opts;
  opts.up_to_iso = true;
  opts.anti_iso_dedup = cfg.anti_iso_dedup;
  for (unsigned order = cfg.order_min; order <= cfg.order_max; ++order) {
    // No partitions of this order into exact_cells nonempty cells: the whole
    // order contributes nothing, so don't enumerate it.
    if (cfg.exact_cells && *cfg.exact_cells > order) continue;
    for_each_semigroup(order, opts, [&](const CayleyTable& t) {
      std::string key = canonical_key(t).to_string();
      if (done_keys.count(key)) {
        ++skipped;
        return;
      }
      if (jobs.push(detail::ClassJob{t, std::move(key)})) ++by_order[order];
    });
  }
  jobs.close();
  for (auto& th : pool) th.join();
  results.close();
  writer_thread.join();

  if (first_error) std::rethrow_exception(first_error);
  summary.skipped_classes = skipped;
  summary.classes_by_order = std::move(by_order);
  return summary;
}

} // namespace semicover
