#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <semicover/semicover.hpp>

namespace {

using namespace semicover;

// Exit codes: 0 pass, 1 input error, 2 property violation (or internal
// soundness tripwire), 3 not-applicable.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;
constexpr int kNotApplicable = 3;

CayleyTable load_table(const std::string& path) {
  CayleyTable t = parse_table_file(path);
  TableCheck check = validate_table(t);
  if (!check)
    throw ParseError("table is not associative: (" + std::to_string(check.a) +
                         "*" + std::to_string(check.b) + ")*" +
                         std::to_string(check.c) + " != " +
                         std::to_string(check.a) + "*(" +
                         std::to_string(check.b) + "*" +
                         std::to_string(check.c) + ")",
                     1, 1);
  return t;
}

Partition load_partition(const std::string& code, const CayleyTable& t) {
  ParsedPartition pp = parse_partition_code(code, t.order());
  if (!pp.was_normal)
    std::cerr << "note: partition code normalized to '"
              << format_partition_code(pp.code) << "'\n";
  return pp.partition;
}

int run_check(const std::string& table_path, const std::string& partition_code) {
  CayleyTable t = load_table(table_path);
  Partition P = partition_code.empty() ? Partition::singletons(t.order())
                                       : load_partition(partition_code, t);
  std::cout << "order: " << t.order() << "\n";
  std::cout << "partition: " << format_partition_code(P.code()) << "\n";
  std::cout << "cells: " << P.size() << "\n";
  CellCovSummary s = min_cov_over_cells(P, t);
  for (unsigned i = 0; i < P.size(); ++i) {
    const CovResult& r = s.per_cell[i];
    std::cout << "cell " << i << " " << P.cell(i).to_string()
              << ": delta=" << delta(P.cell(i), t).to_string();
    if (r.defined)
      std::cout << " cov=" << *r.value << " witness=" << r.witness->to_string();
    else
      std::cout << " cov=undefined";
    std::cout << "\n";
  }
  if (!s.best_value) {
    std::cout << "check: FAIL (no cell has a defined covering number)\n";
    return kViolation;
  }
  std::cout << "best: cell " << *s.best_cell << ", cov " << *s.best_value << "\n";
  if (*s.best_value <= P.size()) {
    std::cout << "check: PASS (best " << *s.best_value << " <= cells "
              << P.size() << ")\n";
    return kOk;
  }
  std::cout << "check: FAIL (best " << *s.best_value << " > cells " << P.size()
            << ")\n";
  return kViolation;
}

int run_witness(const std::string& table_path, const std::string& partition_code,
                unsigned theorem) {
  CayleyTable t = load_table(table_path);
  Partition P = load_partition(partition_code, t);
  Json j;
  j["theorem"] = theorem;
  int rc = kOk;
  switch (theorem) {
    case 1: {
      WitnessTrace tr = witness_theorem1(P, t);
      j["certificate"] = certificate_to_json(tr.certificate);
      j["f_bound"] = tr.claimed_bound.str();
      Json steps = Json::array();
      for (const TraceStep& st : tr.steps) {
        Json js;
        js["case"] = trace_case_name(st.kind);
        js["g"] = st.g == kNoElement ? Json(nullptr) : Json(st.g);
        js["f_size_before"] = st.f_size_before;
        js["f_size_after"] = st.f_size_after;
        steps.push_back(std::move(js));
      }
      j["trace"] = std::move(steps);
      break;
    }
    case 2:
      j["certificate"] = certificate_to_json(witness_theorem2(P, t));
      break;
    case 3: {
      auto cert = witness_theorem3(P, t);
      j["applicable"] = cert.has_value();
      if (cert)
        j["certificate"] = certificate_to_json(*cert);
      else
        rc = kNotApplicable;
      break;
    }
    default:
      throw std::invalid_argument("theorem must be 1, 2 or 3");
  }
  std::cout << j.dump(2) << "\n";
  return rc;
}

int run_decompose(const std::string& table_path) {
  CayleyTable t = load_table(table_path);
  SubsetMask R = minimal_right_ideal(t);
  RightGroupDecomposition d = decompose_right_group(R, t);
  std::cout << "order: " << t.order() << "\n";
  std::cout << "R: " << d.R.to_string() << "\n";
  std::cout << "r: " << d.r << "\n";
  std::cout << "E: " << d.E.to_string() << "\n";
  std::cout << "a: " << d.a << "\n";
  std::cout << "H: " << d.H.to_string() << "\n";
  std::cout << "identity: " << d.identity << "\n";
  std::cout << "inverses:";
  d.H.for_each([&](element_id x) {
    std::cout << " " << x << "->" << d.inverse[x];
  });
  std::cout << "\n";
  std::cout << "e_map:";
  d.R.for_each([&](element_id x) { std::cout << " " << x << "->" << d.e_of[x]; });
  std::cout << "\n";
  std::cout << "H is a group of order " << d.H.count() << "; |R| = |H| * |E| = "
            << d.H.count() << " * " << d.E.count() << "\n";
  return kOk;
}

int run_enumerate(unsigned order, const std::string& dump_dir, bool anti_iso) {
  EnumOptions opts;
  opts.anti_iso_dedup = anti_iso;
  if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);
  std::uint64_t count = 0;
  for_each_semigroup(order, opts, [&](const CayleyTable& t) {
    CanonicalKey key = canonical_key(t);
    std::cout << key.to_string() << "\n";
    if (!dump_dir.empty()) {
      std::string name = "order" + std::to_string(order) + "_class" +
                         std::to_string(count) + ".tbl";
      std::ofstream f(std::filesystem::path(dump_dir) / name);
      f << "# " << key.to_string() << "\n" << format_table(t);
    }
    ++count;
  });
  std::cerr << "order " << order << ": " << count << " classes\n";
  return kOk;
}

int run_search(const std::string& orders, const std::string& partitions,
               unsigned jobs, const std::string& out_path,
               const std::string& checkpoint_path, unsigned interval,
               bool anti_iso) {
  CampaignConfig cfg;
  auto dots = orders.find("..");
  try {
    if (dots == std::string::npos) {
      cfg.order_min = cfg.order_max = static_cast<unsigned>(std::stoul(orders));
    } else {
      cfg.order_min = static_cast<unsigned>(std::stoul(orders.substr(0, dots)));
      cfg.order_max = static_cast<unsigned>(std::stoul(orders.substr(dots + 2)));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad --orders value '" + orders +
                                "': expected A..B or a single order");
  }
  if (partitions != "all") {
    try {
      cfg.exact_cells = static_cast<unsigned>(std::stoul(partitions));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --partitions value '" + partitions +
                                  "': expected 'all' or a cell count");
    }
  }
  cfg.jobs = jobs;
  cfg.out_path = out_path;
  cfg.checkpoint_path = checkpoint_path;
  cfg.checkpoint_interval = interval;
  cfg.anti_iso_dedup = anti_iso;

  CampaignSummary s = run_campaign(cfg);
  std::cout << "classes: " << s.classes;
  if (s.skipped_classes) std::cout << " (skipped " << s.skipped_classes << ")";
  std::cout << "\n";
  for (const auto& [order, n] : s.classes_by_order)
    std::cout << "  order " << order << ": " << n << "\n";
  std::cout << "pairs: " << s.pairs << "\n";
  std::cout << "violations: " << s.violations << "\n";
  if (s.max_gap)
    std::cout << "max (best - n) gap: " << *s.max_gap << "\n";
  else
    std::cout << "max (best - n) gap: n/a\n";
  std::cout << "theorem2 tightness |K|/n:\n";
  for (const auto& [ratio, n] : s.tightness)
    std::cout << "  " << ratio << ": " << n << "\n";
  if (s.violations > 0) {
    std::cout << "result: VIOLATIONS FOUND (see " << (out_path.empty() ? "records" : out_path)
              << ")\n";
    return kViolation;
  }
  std::cout << "result: PASS\n";
  return kOk;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("SEMICOVER_JOBS")) {
    try {
      unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "note: ignoring bad SEMICOVER_JOBS value '" << env << "'\n";
  }
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Delta-set covering numbers on finite semigroups: exact solving,\n"
      "certificate construction, and exhaustive small-order verification"};
  app.require_subcommand(1);

  std::string table_path, partition_code;
  auto* check = app.add_subcommand(
      "check", "Per-cell Delta and exact covering numbers for one table");
  check->add_option("table", table_path, "table file")->required();
  check->add_option("--partition", partition_code,
                    "partition code (default: singletons)");

  std::string w_table, w_partition;
  unsigned w_theorem = 0;
  auto* witness = app.add_subcommand(
      "witness", "Construct and verify a cover certificate for a partition");
  witness->add_option("table", w_table, "table file")->required();
  witness->add_option("--partition", w_partition, "partition code")->required();
  witness->add_option("--theorem", w_theorem, "construction to run: 1, 2 or 3")
      ->required()
      ->check(CLI::Range(1u, 3u));

  std::string d_table;
  auto* decompose = app.add_subcommand(
      "decompose", "Minimal right ideal and its group x right-zero structure");
  decompose->add_option("table", d_table, "table file")->required();

  unsigned e_order = 0;
  std::string e_dump;
  bool e_anti = false;
  auto* enumerate = app.add_subcommand(
      "enumerate", "Stream canonical keys of all classes of one order");
  enumerate->add_option("--order", e_order, "semigroup order")
      ->required()
      ->check(CLI::Range(1u, kMaxEnumOrder));
  enumerate->add_option("--dump", e_dump, "write each class as a table file here");
  enumerate->add_flag("--anti-iso", e_anti,
                      "also collapse classes with their transposes");

  std::string s_orders = "1..4", s_partitions = "all", s_out, s_ckpt;
  unsigned s_jobs = default_jobs();
  unsigned s_interval = 1;
  bool s_anti = false;
  auto* search = app.add_subcommand(
      "search", "Exhaustive verification campaign over classes x partitions");
  search->add_option("--orders", s_orders, "order range A..B")->required();
  search->add_option("--partitions", s_partitions, "'all' or an exact cell count");
  search->add_option("--jobs", s_jobs, "worker count (default $SEMICOVER_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  search->add_option("--out", s_out, "output JSONL path")->required();
  search->add_option("--checkpoint", s_ckpt, "checkpoint path for resumable runs");
  search->add_option("--checkpoint-interval", s_interval, "classes per flush")
      ->check(CLI::PositiveNumber);
  search->add_flag("--anti-iso", s_anti,
                   "dedup transpose classes (each class then evaluated once)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (app.got_subcommand(check)) return run_check(table_path, partition_code);
    if (app.got_subcommand(witness))
      return run_witness(w_table, w_partition, w_theorem);
    if (app.got_subcommand(decompose)) return run_decompose(d_table);
    if (app.got_subcommand(enumerate)) return run_enumerate(e_order, e_dump, e_anti);
    if (app.got_subcommand(search))
      return run_search(s_orders, s_partitions, s_jobs, s_out, s_ckpt,
                        s_interval, s_anti);
  } catch (const semicover::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const semicover::StructureError& e) {
    std::cerr << "structural violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::invalid_argument& e) {
    // Bad values that got past CLI validation (malformed ranges, partition
    // mismatches): input errors, not soundness failures.
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "soundness tripwire: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
