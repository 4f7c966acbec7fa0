#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semicover/core.hpp"
#include "semicover/delta.hpp"
#include "semicover/enumeration.hpp"
#include "semicover/theorems.hpp"

namespace semicover {

using Json = nlohmann::json;

inline Json certificate_to_json(const CoverCertificate& c) {
  Json j;
  j["cell"] = c.cell_index;
  j["k"] = c.witness;
  j["bound"] = c.bound_claimed;
  j["provenance"] = provenance_name(c.provenance);
  return j;
}

inline CoverCertificate certificate_from_json(const Json& j) {
  CoverCertificate c;
  c.cell_index = j.at("cell").get<unsigned>();
  c.witness = j.at("k").get<std::vector<element_id>>();
  c.bound_claimed = j.at("bound").get<std::uint64_t>();
  auto p = provenance_from_name(j.at("provenance").get<std::string>());
  if (!p) throw std::invalid_argument("certificate: unknown provenance");
  c.provenance = *p;
  return c;
}

struct CellReport {
  std::vector<element_id> delta;   // sorted element list of Delta(cell)
  bool cov_defined = false;
  std::optional<unsigned> cov;     // exact value; absent when undefined or not computed

  bool operator==(const CellReport&) const = default;
};

struct Theorem1Report {
  CoverCertificate certificate;
  std::uint64_t k_size = 0;
  std::string f_bound; // exact f(n, 1) in decimal

  bool operator==(const Theorem1Report&) const = default;
};

struct Theorem2Report {
  CoverCertificate certificate;
  std::uint64_t k_size = 0;

  bool operator==(const Theorem2Report&) const = default;
};

struct Theorem3Report {
  bool applicable = false;
  std::optional<CoverCertificate> certificate;

  bool operator==(const Theorem3Report&) const = default;
};

/// One line of a search campaign: everything computed for a single
/// (semigroup class, partition) pair. Self-contained: the canonical key
/// rebuilds the table, so embedded certificates re-verify on load.
struct ReportRecord {
  std::string key;
  unsigned order = 0;
  std::vector<unsigned> partition; // normalized code
  std::vector<CellReport> cells;
  std::optional<unsigned> best_cell;
  std::optional<unsigned> best_value;
  bool pass = false;
  std::optional<Theorem1Report> theorem1;
  std::optional<Theorem2Report> theorem2;
  std::optional<Theorem3Report> theorem3;
  std::uint64_t wall_us = 0;

  bool operator==(const ReportRecord&) const = default;
};

inline Json record_to_json(const ReportRecord& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json jc;
    jc["delta"] = c.delta;
    jc["cov_defined"] = c.cov_defined;
    jc["cov"] = c.cov ? Json(*c.cov) : Json(nullptr);
    cells.push_back(std::move(jc));
  }
  Json j;
  j["key"] = r.key;
  j["order"] = r.order;
  j["partition"] = r.partition;
  j["cells"] = std::move(cells);
  j["best_cell"] = r.best_cell ? Json(*r.best_cell) : Json(nullptr);
  j["best_value"] = r.best_value ? Json(*r.best_value) : Json(nullptr);
  j["pass"] = r.pass;
  if (r.theorem1) {
    j["theorem1"] = Json{{"certificate", certificate_to_json(r.theorem1->certificate)},
                         {"k_size", r.theorem1->k_size},
                         {"f_bound", r.theorem1->f_bound}};
  }
  if (r.theorem2) {
    j["theorem2"] = Json{{"certificate", certificate_to_json(r.theorem2->certificate)},
                         {"k_size", r.theorem2->k_size}};
  }
  if (r.theorem3) {
    Json j3;
    j3["applicable"] = r.theorem3->applicable;
    if (r.theorem3->certificate)
      j3["certificate"] = certificate_to_json(*r.theorem3->certificate);
    j["theorem3"] = std::move(j3);
  }
  j["wall_us"] = r.wall_us;
  return j;
}

inline ReportRecord record_from_json(const Json& j) {
  ReportRecord r;
  r.key = j.at("key").get<std::string>();
  r.order = j.at("order").get<unsigned>();
  r.partition = j.at("partition").get<std::vector<unsigned>>();
  for (const auto& jc : j.at("cells")) {
    CellReport c;
    c.delta = jc.at("delta").get<std::vector<element_id>>();
    c.cov_defined = jc.at("cov_defined").get<bool>();
    if (!jc.at("cov").is_null()) c.cov = jc.at("cov").get<unsigned>();
    r.cells.push_back(std::move(c));
  }
  if (!j.at("best_cell").is_null()) r.best_cell = j.at("best_cell").get<unsigned>();
  if (!j.at("best_value").is_null()) r.best_value = j.at("best_value").get<unsigned>();
  r.pass = j.at("pass").get<bool>();
  if (j.contains("theorem1")) {
    const Json& t1 = j.at("theorem1");
    r.theorem1 = Theorem1Report{certificate_from_json(t1.at("certificate")),
                                t1.at("k_size").get<std::uint64_t>(),
                                t1.at("f_bound").get<std::string>()};
  }
  if (j.contains("theorem2")) {
    const Json& t2 = j.at("theorem2");
    r.theorem2 = Theorem2Report{certificate_from_json(t2.at("certificate")),
                                t2.at("k_size").get<std::uint64_t>()};
  }
  if (j.contains("theorem3")) {
    const Json& t3 = j.at("theorem3");
    Theorem3Report rep;
    rep.applicable = t3.at("applicable").get<bool>();
    if (t3.contains("certificate"))
      rep.certificate = certificate_from_json(t3.at("certificate"));
    r.theorem3 = std::move(rep);
  }
  r.wall_us = j.at("wall_us").get<std::uint64_t>();
  return r;
}

inline std::string record_to_line(const ReportRecord& r) {
  return record_to_json(r).dump();
}

inline ReportRecord record_from_line(const std::string& line) {
  return record_from_json(Json::parse(line));
}

/// Structural re-check of a loaded record: the key must rebuild a table of
/// the recorded order, the partition must fit it, and every embedded
/// certificate must verify against the rebuilt table.
inline CoverCheck verify_record(const ReportRecord& r) {
  CanonicalKey key;
  try {
    key = CanonicalKey::parse(r.key);
  } catch (const std::invalid_argument& e) {
    return {false, std::string("bad key: ") + e.what(), std::nullopt};
  }
  if (key.order != r.order) return {false, "order does not match key", std::nullopt};
  CayleyTable t = key.to_table();
  if (r.partition.size() != r.order)
    return {false, "partition code length mismatch", std::nullopt};
  Partition P = Partition::from_code(r.partition);
  if (r.cells.size() != P.size())
    return {false, "cell report count mismatch", std::nullopt};
  if (r.theorem1) {
    CoverCheck c = verify_cover(r.theorem1->certificate, P, t);
    if (!c) return {false, "theorem1 certificate: " + c.reason, c.uncovered};
    if (r.theorem1->k_size != r.theorem1->certificate.witness.size())
      return {false, "theorem1 k_size mismatch", std::nullopt};
  }
  if (r.theorem2) {
    CoverCheck c = verify_cover(r.theorem2->certificate, P, t);
    if (!c) return {false, "theorem2 certificate: " + c.reason, c.uncovered};
    if (r.theorem2->k_size != r.theorem2->certificate.witness.size())
      return {false, "theorem2 k_size mismatch", std::nullopt};
  }
  if (r.theorem3) {
    if (r.theorem3->applicable != r.theorem3->certificate.has_value())
      return {false, "theorem3 applicability disagrees with certificate", std::nullopt};
    if (r.theorem3->certificate) {
      CoverCheck c = verify_cover(*r.theorem3->certificate, P, t);
      if (!c) return {false, "theorem3 certificate: " + c.reason, c.uncovered};
    }
  }
  return {};
}

/// Normalizes a batch of record lines for golden comparison: zeroes the
/// wall-time field, drops duplicate (key, partition) records (checkpointed
/// runs have at-least-once write semantics), and sorts by (key, partition).
inline std::vector<std::string> normalize_records(const std::vector<std::string>& lines) {
  struct Item {
    std::string key;
    std::vector<unsigned> partition;
    std::string dump;
  };
  std::vector<Item> items;
  items.reserve(lines.size());
  for (const auto& line : lines) {
    if (line.empty()) continue;
    ReportRecord r = record_from_line(line);
    r.wall_us = 0;
    items.push_back({r.key, r.partition, record_to_line(r)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.partition < b.partition;
  });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (auto& it : items) {
    if (!out.empty() && !items.empty() && out.back() == it.dump) continue;
    out.push_back(std::move(it.dump));
  }
  return out;
}

} // namespace semicover
