#pragma once

// Labels, catalog records and file formats behind the weilcat command line.

#include "weilcat/modules.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace weilcat {

using Json = nlohmann::ordered_json;

// "g.q.c" with c the codes of a_{2g-1}, ..., a_g joined by '_', 'm' for minus.
// Only defined for polynomials of even degree satisfying the functional equation.
std::string make_label(const IntPoly& p, const PrimePower& q);
// Inverse of make_label; throws ParseError.
IntPoly parse_label(const std::string& label, PrimePower* q_out = nullptr);
// Label of a class: make_label for non-real classes, the polynomial otherwise.
std::string class_label(const WeilClass& c);

struct ClassRecord {
  std::string label;
  PrimePower q;
  IntPoly poly;
  bool irreducible = false;
  bool real = false;      // all roots real
  bool rational = false;  // all roots rational
  bool ordinary = false;  // p does not divide the middle coefficient
  std::optional<int> dimension;  // set for irreducible non-real classes
};

ClassRecord make_record(const IntPoly& p, const PrimePower& q);

enum class RecordFilter { none, ordinary, irreducible };
RecordFilter parse_filter(const std::string& s);

struct ShardSpec {
  int index = 1;  // 1-based
  int count = 1;
};
// "i/n" with 1 <= i <= n; throws ParseError.
ShardSpec parse_shard(const std::string& s);
// The contiguous slice of a_{2d-1} values owned by a shard.
std::pair<BigInt, BigInt> shard_range(const PrimePower& q, int two_d, const ShardSpec& shard);

struct Catalog {
  PrimePower q;
  int degree = 0;
  ShardSpec shard;
  BigInt lead_lo, lead_hi;
  RecordFilter filter = RecordFilter::none;
  bool complete = false;
  std::vector<ClassRecord> records;
};

Catalog build_catalog(const PrimePower& q, int two_d, const ShardSpec& shard, RecordFilter filter,
                      unsigned threads = 1);
Json catalog_to_json(const Catalog& c);
std::string catalog_to_csv(const Catalog& c);
// Labels of a JSON catalog; throws ParseError.
std::vector<std::string> catalog_labels(const Json& j);

Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);

// Pair file: {q, rank, F: row-major}. V and the support are recomputed.
Json pair_to_json(const DelignePair& m);
DelignePair pair_from_json(const Json& j, bool p_restricted = false);
// Map file: {source, target, rows, cols, matrix}; source and target are pair records.
Json map_to_json(const ModuleMap& f);
ModuleMap map_from_json(const Json& j);

// Support classes of the polynomials named by the labels.
WeilSet support_from_labels(const std::vector<std::string>& labels);
Json order_report(const MinimalCentralOrder& order);

// Number of degree-2 Weil p-polynomials, by enumeration.
std::size_t count_elliptic(const BigInt& p);

}  // namespace weilcat
