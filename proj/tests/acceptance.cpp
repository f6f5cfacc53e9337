// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance [path/to/weilcat]

#include "support.hpp"

#include <gmpxx.h>

#include <Eigen/Eigenvalues>

#include <array>
#include <chrono>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

using namespace weilcat;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

std::string cli_path;
int failures = 0;

void report(int n, bool ok, double seconds, double limit, const std::string& detail) {
  const bool in_time = limit <= 0 || seconds < limit;
  if (!ok || !in_time) ++failures;
  std::printf("criterion %d: %s  %s  (%.2fs", n, ok && in_time ? "PASS" : "FAIL", detail.c_str(), seconds);
  if (limit > 0) std::printf(", limit %.0fs", limit);
  std::printf(")\n");
  std::fflush(stdout);
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string run(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Floating oracle for criterion 2. Polynomials are vectors of mpq_class,
// low degree first; the squarefree part comes from a plain Euclidean gcd.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly rem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

QPoly quot(QPoly a, const QPoly& b) {
  trim(a);
  QPoly out(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    out[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return out;
}

QPoly qgcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool oracle_accepts(const std::vector<long>& coeffs, long q) {
  QPoly p;
  for (long c : coeffs) p.emplace_back(c);
  QPoly dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
  const QPoly s = quot(p, qgcd(p, dp));
  const int n = static_cast<int>(s.size()) - 1;
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat c = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -static_cast<long double>(mpq_class(s[i] / s[n]).get_d());
  Eigen::EigenSolver<Mat> es(c, false);
  const long double r = std::sqrt(static_cast<long double>(q));
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(std::abs(es.eigenvalues()(i)) - r) > 1e-9L) return false;
  return true;
}

void criterion1() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    long oracle = 0;
    for (long b = -2 * p; b <= 2 * p; ++b)
      if (b * b <= 4 * p) ++oracle;
    const auto lib = static_cast<long>(count_elliptic(BigInt(p)));
    long cli = -1;
    if (!cli_path.empty()) {
      try {
        cli = Json::parse(run(cli_path + " count-elliptic " + std::to_string(p)))["count"].get<long>();
      } catch (const std::exception&) {
      }
    }
    ok = ok && lib == oracle && (cli_path.empty() || cli == oracle);
    detail += std::to_string(p) + ":" + std::to_string(lib) + " ";
  }
  report(1, ok, since(t0), 1, "elliptic counts " + detail);
}

void criterion2() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (long q : {2L, 3L, 5L}) {
    const long b3 = isqrt(BigInt(16 * q)).to_long(), b2 = 6 * q;
    std::set<std::vector<long>> oracle;
    for (long a3 = -b3; a3 <= b3; ++a3)
      for (long a2 = -b2; a2 <= b2; ++a2) {
        std::vector<long> c{q * q, q * a3, a2, a3, 1};
        if (oracle_accepts(c, q)) oracle.insert(c);
      }
    std::set<std::vector<long>> got;
    for (const auto& p : enumerate_weil_polys(PrimePower::from(q), 4)) {
      std::vector<long> c;
      for (const auto& x : p.coeffs()) c.push_back(x.to_long());
      got.insert(c);
    }
    ok = ok && got == oracle;
    detail += "q=" + std::to_string(q) + ":" + std::to_string(got.size()) + "/" + std::to_string(oracle.size()) + " ";
  }
  report(2, ok, since(t0), 30, "degree-4 sets vs oracle " + detail);
}

void criterion3() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const auto w = fixtures::random_support(rng, fixtures::random_q(rng), 1 + t % 3);
    const auto o = build_order(w);
    if (!is_zero(IntMatrix(o->reduce(o->h())))) ++bad;
    if (o->multiply(o->frobenius(), o->verschiebung()) != IntVector(o->unit() * w.q().q)) ++bad;
    for (const auto& r : o->residue_rings()) {
      const RatVector v = r.evaluate(o->h());
      for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) ++bad;
    }
  }
  report(3, bad == 0, since(t0), 10, "h_w(F,V)=0 and FV=q on 100 supports, failures " + std::to_string(bad));
}

void criterion4() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  int bad = 0, pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const auto w = fixtures::random_support(rng, fixtures::random_q(rng), 1 + t % 3);
    if (build_order(w)->rank() != w.total_degree()) ++bad;
  }
  for (long q : {5L, 7L, 11L}) {
    const auto pq = PrimePower::from(q);
    const long b = isqrt(BigInt(4 * q)).to_long();
    for (long b1 = -b; b1 <= b; ++b1)
      for (long b2 = b1 + 1; b2 <= b; ++b2) {
        const WeilSet w(pq, {classify(IntPoly{q, -b1, 1}, pq), classify(IntPoly{q, -b2, 1}, pq)});
        ++pairs;
        if (conductor_index(*build_order(w)) != BigInt((b1 - b2) * (b1 - b2))) ++bad;
      }
  }
  report(4, bad == 0, since(t0), 0,
         "rank sums on 100 supports, index (b1-b2)^2 on " + std::to_string(pairs) + " pairs, failures " +
             std::to_string(bad));
}

void criterion5() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(303);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const auto o = build_order(fixtures::random_support(rng, fixtures::random_q(rng), 1 + t % 3));
    if (socle_dim_at_p(*o) != 1) ++bad;
  }
  const auto q25 = PrimePower::from(25);
  const auto plus5 = classify(IntPoly{-5, 1}, q25);
  const auto bad_w = order_for(WeilSet(q25, {classify(IntPoly{25, 5, 1}, q25), plus5}));
  const auto good_w = order_for(WeilSet(q25, {classify(IntPoly{25, 1, 1}, q25), plus5}));
  const int s_bad = socle_dim_at_p(*bad_w), s_good = socle_dim_at_p(*good_w);
  const bool ok = bad == 0 && s_bad == 2 && !is_gorenstein(*bad_w) && s_good == 1 && is_gorenstein(*good_w);
  report(5, ok, since(t0), 0,
         "socle 1 on 100 even supports (failures " + std::to_string(bad) + "), q=25 socles " +
             std::to_string(s_good) + "/" + std::to_string(s_bad));
}

Index commutant_dim(const IntMatrix& a) {
  const Index n = a.rows();
  RatMatrix sys = RatMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        sys(i * n + j, i * n + k) += Rational(a(k, j));
        sys(i * n + j, k * n + j) -= Rational(a(i, k));
      }
  return n * n - rank(sys, RationalField{});
}

std::string rejection(const IntMatrix& f, const PrimePower& q, bool restricted = false) {
  try {
    validate_pair(f, q, restricted);
  } catch (const PairInvalid& e) {
    return e.invariant();
  }
  return "valid";
}

ModuleMap random_map(std::mt19937_64& rng, const DelignePair& a, const DelignePair& b) {
  std::uniform_int_distribution<long> d(-3, 3);
  IntMatrix x = zero_matrix(b.rank(), a.rank());
  for (const auto& h : hom_basis(a, b)) x += BigInt(d(rng)) * h;
  return ModuleMap::make(a, b, x);
}

void criterion6() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(404);
  int bad = 0;
  std::ostringstream why;
  auto fail = [&](const std::string& s) {
    if (bad++ < 3) why << " [" << s << "]";
  };

  const auto q5 = PrimePower::from(5);
  const IntMatrix a = companion_matrix(IntPoly{5, 0, 1});
  IntMatrix jordan = zero_matrix(4, 4);
  jordan.topLeftCorner(2, 2) = a;
  jordan.bottomRightCorner(2, 2) = a;
  jordan.topRightCorner(2, 2) = identity_matrix(2);
  IntMatrix non_integral = zero_matrix(2, 2);
  non_integral(0, 1) = -7;
  non_integral(1, 0) = 1;
  const std::vector<std::tuple<IntMatrix, bool, std::string>> fixtures{
      {companion_matrix(IntPoly{5, -1, 1}), false, "valid"},
      {identity_matrix(2), false, "weil"},
      {jordan, false, "semisimple"},
      {companion_matrix(IntPoly{-5, 0, 1}), true, "non-real"},
      {companion_matrix(IntPoly{-5, 0, 1}), false, "valid"},
      {non_integral, false, "weil"},
      {zero_matrix(2, 3), false, "shape"},
  };
  for (const auto& [f, restricted, expect] : fixtures)
    if (rejection(f, q5, restricted) != expect) fail("fixture " + expect);

  int composed = 0;
  for (int t = 0; t < 50; ++t) {
    const auto m = fixtures::random_pair(rng, fixtures::random_q(rng));
    if (rejection(m.F, m.q) != "valid") fail("random pair rejected");
    if (static_cast<Index>(hom_basis(m, m).size()) != commutant_dim(m.F)) fail("hom rank");
    const auto d = tau_dual(m);
    if (tau_dual(d).F != m.F || tau_dual(d).V != m.V) fail("tau");
    const auto o = order_for(m.support);
    if (!double_dual_check(m, o)) fail("double dual on valid pair");
    if (!ext1_vanishing_check(m, o)) fail("ext1 on valid pair");
    // Two composable maps m -> n -> m with n an isomorphic copy.
    const auto n = change_basis(m, fixtures::random_unimodular(rng, m.rank()));
    for (int k = 0; k < 4 && composed < 100; ++k) {
      const auto f = random_map(rng, m, n), g = random_map(rng, n, m);
      const auto cf = coker_order(f), cg = coker_order(g);
      if (!cf || !cg) continue;
      ++composed;
      if (coker_order(compose(g, f)) != *cf * *cg) fail("coker multiplicativity");
    }
  }
  if (composed < 100) fail("only " + std::to_string(composed) + " composable nonsingular pairs");

  // Ideals of the non-Gorenstein order {x^2+5x+25, +5} at q = 25: reflexivity fails.
  const auto q25 = PrimePower::from(25);
  const auto o = build_order_with_rational(WeilSet(q25, {classify(IntPoly{25, 5, 1}, q25)}), 1);
  const auto reg = regular_pair(*o);
  auto gens = [](std::initializer_list<std::array<long, 3>> cols) {
    IntMatrix g(3, static_cast<Index>(cols.size()));
    Index j = 0;
    for (const auto& c : cols) {
      for (Index i = 0; i < 3; ++i) g(i, j) = BigInt(c[static_cast<std::size_t>(i)]);
      ++j;
    }
    return g;
  };
  // Basis F, 1, V.
  const std::vector<IntMatrix> ideals{gens({{0, 5, 0}, {1, 0, 0}}), gens({{1, 0, 0}, {0, 0, 1}}),
                                      gens({{0, 5, 0}, {0, 0, 1}})};
  for (const auto& g : ideals) {
    const auto ideal = submodule_pair(reg, *o, g);
    if (double_dual_check(ideal, o)) fail("double dual passed on fixture");
    if (ext1_vanishing_check(ideal, o)) fail("ext1 passed on fixture");
  }
  report(6, bad == 0, since(t0), 60,
         "50 pairs, " + std::to_string(composed) + " composable maps, 3 non-reflexive fixtures, failures " +
             std::to_string(bad) + why.str());
}

void criterion7() {
  const auto t0 = Clock::now();
  if (cli_path.empty()) {
    report(7, false, since(t0), 0, "no weilcat binary given");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / ("weilcat-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto enumerate = [&](const std::string& extra, const fs::path& out) {
    return std::system((cli_path + " enumerate --q 3 --degree 4 " + extra + " --out " + out.string()).c_str());
  };
  bool ok = enumerate("", dir / "a.json") == 0 && enumerate("", dir / "b.json") == 0 &&
            enumerate("--threads 4", dir / "c.json") == 0 && enumerate("--format csv", dir / "a.csv") == 0 &&
            enumerate("--format csv", dir / "b.csv") == 0;
  const std::string whole = slurp(dir / "a.json");
  const bool identical = ok && !whole.empty() && whole == slurp(dir / "b.json") && whole == slurp(dir / "c.json") &&
                         slurp(dir / "a.csv") == slurp(dir / "b.csv");
  std::vector<std::string> merged;
  for (int i = 1; i <= 4; ++i) {
    const fs::path out = dir / ("shard" + std::to_string(i) + ".json");
    ok = ok && enumerate("--shard " + std::to_string(i) + "/4", out) == 0;
    if (ok) {
      const auto labels = catalog_labels(Json::parse(slurp(out)));
      merged.insert(merged.end(), labels.begin(), labels.end());
    }
  }
  std::vector<std::string> all;
  if (ok) all = catalog_labels(Json::parse(whole));
  const bool merge_ok = ok && !all.empty() && merged == all;
  fs::remove_all(dir);
  report(7, ok && identical && merge_ok, since(t0), 0,
         std::string("repeat runs ") + (identical ? "identical" : "differ") + ", 4-way shard merge " +
             (merge_ok ? "equal" : "differs") + " (" + std::to_string(all.size()) + " records)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
