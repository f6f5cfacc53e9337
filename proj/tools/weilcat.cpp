// weilcat: Weil polynomial catalogs, minimal central orders and Deligne pairs.
//
// Exit codes: 0 ok, 2 validation failure, 3 malformed input, 4 resource cap.

#include "weilcat/atlas.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace weilcat;

namespace {

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kMalformed = 3, kCap = 4 };

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + out);
  f << text;
}

Json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int fail(const char* kind, const std::string& message, int code, const std::string& invariant = "") {
  Json j;
  j["error"] = kind;
  if (!invariant.empty()) j["invariant"] = invariant;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << "\n";
  return code;
}

std::string dumps(const Json& j) { return j.dump(2) + "\n"; }

Json pair_check_report(const DelignePair& m) {
  Json j;
  j["valid"] = true;
  j["q"] = bigint_to_json(m.q.q);
  j["rank"] = m.rank();
  Json cp = Json::array();
  for (const auto& c : m.charpoly.coeffs()) cp.push_back(bigint_to_json(c));
  j["charpoly"] = cp;
  Json support = Json::array();
  std::string labels;
  bool any_real = false;
  for (const auto& c : m.support.classes()) {
    support.push_back(class_label(c));
    labels += (labels.empty() ? "" : " ") + class_label(c);
    any_real = any_real || c.is_real;
  }
  j["support"] = support;
  std::string summary = "valid";
  if (any_real) {
    j["ordinary"] = nullptr;
  } else {
    const bool ord = is_ordinary(m.support);
    j["ordinary"] = ord;
    summary += ord ? ", ordinary" : ", non-ordinary";
  }
  j["summary"] = summary + ", support " + labels;
  Json v = Json::array();
  for (Index i = 0; i < m.V.rows(); ++i)
    for (Index k = 0; k < m.V.cols(); ++k) v.push_back(bigint_to_json(m.V(i, k)));
  j["V"] = v;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil polynomials, minimal central orders and Deligne pairs"};
  app.require_subcommand(1);

  std::string q_text, format = "json", shard_text = "1/1", filter_text = "none", out;
  int degree = 2;
  unsigned threads = 1;
  auto* enumerate = app.add_subcommand("enumerate", "catalog of Weil q-polynomials of one degree");
  enumerate->add_option("--q", q_text, "prime power q")->required();
  enumerate->add_option("--degree", degree, "even degree 2g")->required();
  enumerate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  enumerate->add_option("--shard", shard_text, "i/n: slice of the leading coefficient range");
  enumerate->add_option("--filter", filter_text, "ordinary or irreducible");
  enumerate->add_option("--threads", threads, "enumeration workers");
  enumerate->add_option("--out", out, "output path");

  std::vector<std::string> labels;
  auto* order_info = app.add_subcommand("order-info", "R_w for the support of the given labels");
  order_info->add_option("labels", labels, "class labels g.q.codes")->required();
  order_info->add_option("--out", out, "output path");

  auto* pair = app.add_subcommand("pair", "Deligne pair computations");
  pair->require_subcommand(1);
  std::string file, file2;
  bool p_restricted = false;
  auto* check = pair->add_subcommand("check", "validate a pair file");
  check->add_option("file", file)->required();
  check->add_flag("--p-restricted", p_restricted, "require q prime and non-real eigenvalues");
  auto* hom = pair->add_subcommand("hom", "basis of Hom(source, target)");
  hom->add_option("source", file)->required();
  hom->add_option("target", file2)->required();
  auto* dual = pair->add_subcommand("dual", "the pair with F and V swapped");
  dual->add_option("file", file)->required();
  dual->add_option("--out", out, "output path");
  auto* deg = pair->add_subcommand("degree", "cokernel order of a map file");
  deg->add_option("file", file)->required();

  std::string p_text;
  auto* elliptic = app.add_subcommand("count-elliptic", "number of degree-2 Weil p-polynomials");
  elliptic->add_option("prime,--p,--q", p_text, "prime p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail("usage", e.what(), kMalformed);
  }

  try {
    if (*enumerate) {
      Json qj = q_text;
      PrimePower q = PrimePower::from(bigint_from_json(qj));
      Catalog c = build_catalog(q, degree, parse_shard(shard_text), parse_filter(filter_text), threads);
      emit(format == "csv" ? catalog_to_csv(c) : dumps(catalog_to_json(c)), out);
    } else if (*order_info) {
      OrderPtr o = order_for(support_from_labels(labels));
      emit(dumps(order_report(*o)), out);
    } else if (*check) {
      try {
        emit(dumps(pair_check_report(pair_from_json(read_json(file), p_restricted))), "");
      } catch (const PairInvalid& e) {
        Json j{{"valid", false}, {"invariant", e.invariant()}, {"message", e.what()},
               {"summary", std::string("invalid: ") + e.what()}};
        std::cout << dumps(j);
        throw;
      }
    } else if (*hom) {
      DelignePair src = pair_from_json(read_json(file)), dst = pair_from_json(read_json(file2));
      Json basis = Json::array();
      for (const auto& f : hom_lattice(src, dst)) {
        Json m = Json::array();
        for (Index i = 0; i < f.matrix.rows(); ++i)
          for (Index k = 0; k < f.matrix.cols(); ++k) m.push_back(bigint_to_json(f.matrix(i, k)));
        basis.push_back(m);
      }
      Json j{{"source_rank", src.rank()}, {"target_rank", dst.rank()}, {"rank", basis.size()}, {"basis", basis}};
      emit(dumps(j), "");
    } else if (*dual) {
      emit(dumps(pair_to_json(tau_dual(pair_from_json(read_json(file))))), out);
    } else if (*deg) {
      ModuleMap f = map_from_json(read_json(file));
      auto order = coker_order(f);
      Json j;
      j["degree"] = order ? bigint_to_json(*order) : Json("infinite");
      j["isogeny"] = is_isogeny(f);
      j["surjective"] = is_surjective(f);
      emit(dumps(j), "");
    } else if (*elliptic) {
      if (p_text.empty()) throw ParseError("count-elliptic needs p");
      Json pj = p_text;
      const BigInt p = bigint_from_json(pj);
      Json j{{"p", bigint_to_json(p)}, {"count", count_elliptic(p)}};
      emit(dumps(j), "");
    }
  } catch (const PairInvalid& e) {
    return fail("validation", e.what(), kValidation, e.invariant());
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), kValidation);
  } catch (const ParseError& e) {
    return fail("malformed", e.what(), kMalformed);
  } catch (const Json::exception& e) {
    return fail("malformed", e.what(), kMalformed);
  } catch (const CapExceeded& e) {
    return fail("cap", e.what(), kCap);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
  return kOk;
}
