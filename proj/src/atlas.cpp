#include "weilcat/atlas.hpp"

#include <algorithm>
#include <sstream>

namespace weilcat {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

PrimePower parse_q(const std::string& s) {
  if (!all_digits(s)) throw ParseError("q must be a positive integer, got '" + s + "'");
  try {
    return PrimePower::from(BigInt(s));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

Json coeffs_to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(bigint_to_json(c));
  return a;
}

Json matrix_to_flat_json(const IntMatrix& m) {
  Json a = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) a.push_back(bigint_to_json(m(i, j)));
  return a;
}

IntMatrix matrix_from_flat_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows * cols)
    throw ParseError("matrix needs " + std::to_string(rows * cols) + " row-major entries");
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = bigint_from_json(j[static_cast<std::size_t>(i * cols + k)]);
  return m;
}

Index index_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("missing or invalid field '") + key + "'");
  return static_cast<Index>(j[key].get<long long>());
}

}  // namespace

Json bigint_to_json(const BigInt& v) {
  if (v.fits_long()) return Json(v.to_long());
  return Json(v.str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::string digits = !s.empty() && s[0] == '-' ? s.substr(1) : s;
    if (!all_digits(digits)) throw ParseError("not an integer: '" + s + "'");
    return BigInt(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

std::string make_label(const IntPoly& p, const PrimePower& q) {
  if (p.degree() < 2 || p.degree() % 2 != 0 || !p.is_monic() || !check_functional_equation(p, q))
    throw ValidationError(p.str() + " has no label: labels need even degree and the functional equation");
  const int g = p.degree() / 2;
  std::string out = std::to_string(g) + "." + q.q.str() + ".";
  for (int i = 2 * g - 1; i >= g; --i) {
    const BigInt a = p.coeff(i);
    if (i != 2 * g - 1) out += "_";
    out += a.sign() < 0 ? "m" + (-a).str() : a.str();
  }
  return out;
}

IntPoly parse_label(const std::string& label, PrimePower* q_out) {
  const auto parts = split(label, '.');
  if (parts.size() != 3) throw ParseError("label '" + label + "' is not of the form g.q.codes");
  if (!all_digits(parts[0]) || parts[0].size() > 4) throw ParseError("bad dimension in label '" + label + "'");
  const int g = std::stoi(parts[0]);
  if (g < 1) throw ParseError("bad dimension in label '" + label + "'");
  const PrimePower q = parse_q(parts[1]);
  const auto codes = split(parts[2], '_');
  if (static_cast<int>(codes.size()) != g)
    throw ParseError("label '" + label + "' needs " + std::to_string(g) + " coefficient codes");
  std::vector<BigInt> c(static_cast<std::size_t>(2 * g) + 1, BigInt(0));
  c[static_cast<std::size_t>(2 * g)] = 1;
  c[0] = pow(q.q, static_cast<unsigned long>(g));
  for (int k = 0; k < g; ++k) {
    std::string code = codes[static_cast<std::size_t>(k)];
    bool neg = !code.empty() && code[0] == 'm';
    if (neg) code = code.substr(1);
    if (!all_digits(code)) throw ParseError("bad coefficient code in label '" + label + "'");
    BigInt a(code);
    if (neg) a = -a;
    const int r = g - 1 - k;  // code k is a_{2g-1-k} = a_{g+r}
    c[static_cast<std::size_t>(g + r)] = a;
    c[static_cast<std::size_t>(g - r)] = a * pow(q.q, static_cast<unsigned long>(r));
  }
  if (q_out) *q_out = q;
  return IntPoly(std::move(c));
}

std::string class_label(const WeilClass& c) {
  if (!c.is_real) return make_label(c.minpoly, c.q);
  return c.minpoly.str();
}

ClassRecord make_record(const IntPoly& p, const PrimePower& q) {
  ClassRecord r;
  r.label = make_label(p, q);
  r.q = q;
  r.poly = p;
  const auto factors = factor_int_poly(p);
  r.irreducible = factors.size() == 1 && factors[0].multiplicity == 1;
  r.rational = std::all_of(factors.begin(), factors.end(), [](const PolyFactor& f) { return f.poly.degree() == 1; });
  r.real = std::all_of(factors.begin(), factors.end(), [&](const PolyFactor& f) {
    return f.poly.degree() == 1 || (f.poly.degree() == 2 && f.poly.coeff(1).is_zero() && f.poly.coeff(0) == -q.q);
  });
  r.ordinary = !divides(q.p, p.coeff(p.degree() / 2));
  if (r.irreducible && !r.real) r.dimension = p.degree() / 2;
  return r;
}

RecordFilter parse_filter(const std::string& s) {
  if (s.empty() || s == "none") return RecordFilter::none;
  if (s == "ordinary") return RecordFilter::ordinary;
  if (s == "irreducible") return RecordFilter::irreducible;
  throw ParseError("unknown filter '" + s + "'");
}

ShardSpec parse_shard(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() != 2 || !all_digits(parts[0]) || !all_digits(parts[1]) || parts[0].size() > 6 ||
      parts[1].size() > 6)
    throw ParseError("shard must look like i/n, got '" + s + "'");
  ShardSpec sh{std::stoi(parts[0]), std::stoi(parts[1])};
  if (sh.count < 1 || sh.index < 1 || sh.index > sh.count) throw ParseError("shard index out of range in '" + s + "'");
  return sh;
}

std::pair<BigInt, BigInt> shard_range(const PrimePower& q, int two_d, const ShardSpec& shard) {
  const BigInt b = leading_free_bound(q, two_d);
  const BigInt len = BigInt(2) * b + BigInt(1);
  const BigInt n(shard.count), i(shard.index - 1);
  BigInt lo = -b + floor_div(i * len, n);
  BigInt hi = -b + floor_div((i + BigInt(1)) * len, n) - BigInt(1);
  return {lo, hi};
}

Catalog build_catalog(const PrimePower& q, int two_d, const ShardSpec& shard, RecordFilter filter, unsigned threads) {
  Catalog c;
  c.q = q;
  c.degree = two_d;
  c.shard = shard;
  c.filter = filter;
  std::tie(c.lead_lo, c.lead_hi) = shard_range(q, two_d, shard);
  EnumerationOptions opts;
  opts.lead_lo = c.lead_lo;
  opts.lead_hi = c.lead_hi;
  opts.threads = threads;
  for (const auto& p : enumerate_weil_polys(q, two_d, opts)) {
    ClassRecord r = make_record(p, q);
    if (filter == RecordFilter::ordinary && !r.ordinary) continue;
    if (filter == RecordFilter::irreducible && !r.irreducible) continue;
    c.records.push_back(std::move(r));
  }
  c.complete = true;
  return c;
}

Json catalog_to_json(const Catalog& c) {
  Json j;
  j["q"] = bigint_to_json(c.q.q);
  j["degree"] = c.degree;
  j["shard"] = {{"index", c.shard.index},
                {"count", c.shard.count},
                {"lead_range", Json::array({bigint_to_json(c.lead_lo), bigint_to_json(c.lead_hi)})}};
  j["filter"] = c.filter == RecordFilter::none ? "none" : c.filter == RecordFilter::ordinary ? "ordinary" : "irreducible";
  j["complete"] = c.complete;
  j["count"] = c.records.size();
  Json recs = Json::array();
  for (const auto& r : c.records) {
    Json o;
    o["label"] = r.label;
    o["q"] = bigint_to_json(r.q.q);
    o["degree"] = r.poly.degree();
    o["coefficients"] = coeffs_to_json(r.poly);
    o["irreducible"] = r.irreducible;
    o["real"] = r.real;
    o["rational"] = r.rational;
    o["ordinary"] = r.ordinary;
    if (r.dimension) o["dimension"] = *r.dimension;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  return j;
}

std::string catalog_to_csv(const Catalog& c) {
  std::ostringstream os;
  os << "label,q,degree,coefficients,irreducible,real,rational,ordinary\n";
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& r : c.records) {
    os << r.label << ',' << r.q.q << ',' << r.poly.degree() << ',';
    for (std::size_t i = 0; i < r.poly.coeffs().size(); ++i) os << (i ? ";" : "") << r.poly.coeffs()[i];
    os << ',' << flag(r.irreducible) << ',' << flag(r.real) << ',' << flag(r.rational) << ',' << flag(r.ordinary)
       << '\n';
  }
  return os.str();
}

std::vector<std::string> catalog_labels(const Json& j) {
  if (!j.is_object() || !j.contains("records") || !j["records"].is_array()) throw ParseError("not a catalog file");
  std::vector<std::string> out;
  for (const auto& r : j["records"]) {
    if (!r.contains("label") || !r["label"].is_string()) throw ParseError("catalog record without a label");
    out.push_back(r["label"].get<std::string>());
  }
  return out;
}

Json pair_to_json(const DelignePair& m) {
  Json j;
  j["q"] = bigint_to_json(m.q.q);
  j["rank"] = m.rank();
  j["F"] = matrix_to_flat_json(m.F);
  return j;
}

DelignePair pair_from_json(const Json& j, bool p_restricted) {
  if (!j.is_object()) throw ParseError("pair record must be a JSON object");
  if (!j.contains("q")) throw ParseError("pair record needs q");
  const BigInt qv = bigint_from_json(j["q"]);
  if (qv < 2L) throw ParseError("q must be at least 2");
  const PrimePower q = parse_q(qv.str());
  const Index n = index_field(j, "rank");
  if (n == 0) throw ParseError("pair rank must be positive");
  if (!j.contains("F")) throw ParseError("pair record needs F");
  return validate_pair(matrix_from_flat_json(j["F"], n, n), q, p_restricted);
}

Json map_to_json(const ModuleMap& f) {
  Json j;
  j["source"] = pair_to_json(f.source);
  j["target"] = pair_to_json(f.target);
  j["rows"] = f.matrix.rows();
  j["cols"] = f.matrix.cols();
  j["matrix"] = matrix_to_flat_json(f.matrix);
  return j;
}

ModuleMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("matrix"))
    throw ParseError("map record needs source, target and matrix");
  DelignePair src = pair_from_json(j["source"]);
  DelignePair dst = pair_from_json(j["target"]);
  const Index rows = index_field(j, "rows"), cols = index_field(j, "cols");
  if (rows != dst.rank() || cols != src.rank()) throw ParseError("map dimensions do not match the pairs");
  return ModuleMap::make(std::move(src), std::move(dst), matrix_from_flat_json(j["matrix"], rows, cols));
}

WeilSet support_from_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw ValidationError("no labels given");
  std::optional<PrimePower> q;
  std::vector<WeilClass> classes;
  for (const auto& l : labels) {
    PrimePower ql;
    IntPoly p = parse_label(l, &ql);
    if (q && !(*q == ql)) throw ValidationError("labels over different q");
    q = ql;
    if (!is_weil_poly(p, ql)) throw ValidationError("label " + l + " is not a Weil polynomial");
    for (const auto& f : factor_int_poly(p)) {
      WeilClass c = classify(f.poly, ql);
      if (std::none_of(classes.begin(), classes.end(), [&](const WeilClass& o) { return o == c; }))
        classes.push_back(std::move(c));
    }
  }
  return WeilSet(*q, std::move(classes));
}

Json order_report(const MinimalCentralOrder& order) {
  Json j;
  j["q"] = bigint_to_json(order.q().q);
  Json w = Json::array();
  for (const auto& c : order.w().classes())
    w.push_back({{"label", class_label(c)},
                 {"minpoly", coeffs_to_json(c.minpoly)},
                 {"real", c.is_real},
                 {"rational", c.is_rational},
                 {"ordinary", c.is_ordinary}});
  j["w"] = std::move(w);
  j["rank"] = order.rank();
  j["D"] = order.half_rank();
  j["rational_case"] = order.rational_case();
  Json basis = Json::array();
  for (Index i = 0; i < order.rank(); ++i) basis.push_back(order.basis_label(i));
  j["basis"] = std::move(basis);
  Json f = Json::array(), g = Json::array();
  for (const auto& c : order.h().f_coeffs()) f.push_back(bigint_to_json(c));
  for (const auto& c : order.h().g_coeffs()) g.push_back(bigint_to_json(c));
  j["h"] = {{"text", order.h().str()}, {"f", f}, {"constant", bigint_to_json(order.h().constant_term())}, {"g", g}};
  j["index"] = bigint_to_json(order.index());
  j["power_basis_index"] = order.power_basis_index().str();
  const SocleReport s = socle_report(order);
  j["socle"] = {{"p", s.p},
                {"dim", s.socle_dim},
                {"local_factors", s.local_factors},
                {"types", s.types},
                {"at_FV", s.local_socle_at_fv}};
  j["gorenstein"] = s.socle_dim == 1;
  Json table = Json::array();
  for (const auto& row : order.mult_table()) {
    Json r = Json::array();
    for (const auto& v : row) {
      Json e = Json::array();
      for (Index k = 0; k < v.size(); ++k) e.push_back(bigint_to_json(v(k)));
      r.push_back(std::move(e));
    }
    table.push_back(std::move(r));
  }
  j["mult_table"] = std::move(table);
  Json emb = Json::array();
  for (Index i = 0; i < order.embedding().rows(); ++i) {
    Json r = Json::array();
    for (Index k = 0; k < order.embedding().cols(); ++k) r.push_back(order.embedding()(i, k).str());
    emb.push_back(std::move(r));
  }
  j["embedding"] = std::move(emb);
  return j;
}

std::size_t count_elliptic(const BigInt& p) {
  const PrimePower q = PrimePower::from(p);
  if (q.e != 1) throw ValidationError(p.str() + " is not prime");
  return enumerate_weil_polys(q, 2).size();
}

}  // namespace weilcat
