#pragma once

// Shared fixtures for the test binaries: sampled Weil supports and random
// Deligne pairs built from companion matrices and regular representations.

#include "weilcat/atlas.hpp"

#include <map>
#include <random>
#include <vector>

namespace weilcat::fixtures {

// Irreducible classes of degree 2 and 4 for q, from the enumerator.
inline const std::vector<WeilClass>& classes_for(long q) {
  static std::map<long, std::vector<WeilClass>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  const PrimePower pq = PrimePower::from(q);
  std::vector<WeilClass> out;
  for (int two_d : {2, 4})
    for (const auto& p : enumerate_weil_polys(pq, two_d))
      if (is_irreducible(p)) out.push_back(classify(p, pq));
  if (!pq.is_square()) out.push_back(classify(IntPoly{-q, 0, 1}, pq));
  return cache.emplace(q, std::move(out)).first->second;
}

inline WeilSet random_support(std::mt19937_64& rng, long q, int size) {
  const auto& pool = classes_for(q);
  std::vector<WeilClass> picked;
  while (static_cast<int>(picked.size()) < size) {
    const auto& c = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    bool seen = false;
    for (const auto& d : picked) seen = seen || d == c;
    if (!seen) picked.push_back(c);
  }
  return WeilSet(PrimePower::from(q), picked);
}

inline long random_q(std::mt19937_64& rng) {
  static const long qs[] = {2, 3, 4, 5, 7, 8, 9, 11, 13};
  return qs[std::uniform_int_distribution<int>(0, 8)(rng)];
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, Index n, int steps = 6) {
  IntMatrix u = identity_matrix(n);
  if (n < 2) return u;
  std::uniform_int_distribution<Index> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const Index i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const BigInt m(mult(rng));
    for (Index k = 0; k < n; ++k) u(i, k) += m * u(j, k);
  }
  return u;
}

// A valid pair of rank <= max_rank: a direct sum of regular representations of
// orders with one or two classes, in a scrambled basis.
inline DelignePair random_pair(std::mt19937_64& rng, long q, Index max_rank = 6) {
  const auto& pool = classes_for(q);
  auto pick = [&] { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; };
  std::vector<DelignePair> parts;
  Index total = 0;
  for (int tries = 0; tries < 40 && total < max_rank; ++tries) {
    std::vector<WeilClass> cs{pick()};
    if (std::bernoulli_distribution(0.3)(rng)) {
      const auto c = pick();
      if (!(c == cs[0])) cs.push_back(c);
    }
    Index deg = 0;
    for (const auto& c : cs) deg += c.two_d;
    if (total + deg > max_rank) continue;
    parts.push_back(regular_pair(*build_order(WeilSet(cs[0].q, cs))));
    total += deg;
    if (std::bernoulli_distribution(0.4)(rng)) break;
  }
  DelignePair m = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) m = direct_sum(m, parts[i]);
  return change_basis(m, random_unimodular(rng, m.rank()));
}

}  // namespace weilcat::fixtures
