#pragma once

// Deligne pairs (T, F): a free Z-lattice with a semisimple Frobenius whose
// eigenvalues are Weil q-numbers and whose Verschiebung q F^{-1} is integral.

#include "weilcat/error.hpp"
#include "weilcat/factor.hpp"
#include "weilcat/orders.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weilcat {

// A pair failed validation; invariant() names which condition.
class PairInvalid : public ValidationError {
 public:
  PairInvalid(std::string invariant, const std::string& what)
      : ValidationError(what), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

struct DelignePair {
  PrimePower q;
  IntMatrix F;
  IntMatrix V;
  IntPoly charpoly;
  IntPoly minpoly;
  std::vector<PolyFactor> factors;  // of charpoly
  WeilSet support{q};
  bool p_restricted = false;

  Index rank() const { return F.rows(); }
};

// Throws PairInvalid with invariant "shape", "semisimple", "weil", "non-real",
// "prime-field" or "integral-verschiebung".
DelignePair validate_pair(const IntMatrix& F, const PrimePower& q, bool p_restricted = false);

// q F^{-1}; throws PairInvalid("integral-verschiebung") when it is not integral.
IntMatrix verschiebung(const IntMatrix& F, const BigInt& q);

struct ModuleMap {
  DelignePair source;
  DelignePair target;
  IntMatrix matrix;  // target rank x source rank

  // Throws ValidationError unless matrix F_source = F_target matrix.
  static ModuleMap make(DelignePair source, DelignePair target, IntMatrix matrix);
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap identity_map(const DelignePair& m);
ModuleMap scalar_map(const DelignePair& m, const BigInt& c);

// Basis of the saturated lattice {f : f F_src = F_dst f}.
std::vector<IntMatrix> hom_basis(const DelignePair& src, const DelignePair& dst);
std::vector<ModuleMap> hom_lattice(const DelignePair& src, const DelignePair& dst);

DelignePair direct_sum(const DelignePair& a, const DelignePair& b);
// The pair with F replaced by U F U^{-1}, U unimodular.
DelignePair change_basis(const DelignePair& m, const IntMatrix& u);
// R_w acting on itself through multiplication by F.
DelignePair regular_pair(const MinimalCentralOrder& order);
// The R_w-submodule of a module generated by the given vectors (columns).
DelignePair submodule_pair(const DelignePair& m, const MinimalCentralOrder& order, const IntMatrix& generators);

struct OrderModuleView {
  DelignePair pair;
  OrderPtr order;
  std::vector<IntMatrix> action;  // one matrix per order basis element
};

// Throws ValidationError when the support is not inside w or the defining
// relations of R_w do not act as zero.
OrderModuleView module_view(const DelignePair& pair, OrderPtr order);

bool end_ring_is_minimal(const DelignePair& pair, OrderPtr order);

DelignePair tau_dual(const DelignePair& pair);
ModuleMap tau_dual(const ModuleMap& f);

// Order of the cokernel; nullopt when it is infinite.
std::optional<BigInt> coker_order(const ModuleMap& f);
bool is_isogeny(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);

struct DualityReport {
  bool passed = false;
  Index dual_rank = 0;
  BigInt evaluation_det;  // |det| of M -> M** (0 when not square)
};

DualityReport double_dual_report(const DelignePair& pair, OrderPtr order);
bool double_dual_check(const DelignePair& pair, OrderPtr order);

struct ExtReport {
  bool passed = false;
  Index generators = 0;
  BigInt obstruction;  // order of coker(Hom(R^k, R) -> Hom(K, R)), 0 if infinite
};

ExtReport ext1_report(const DelignePair& pair, OrderPtr order);
bool ext1_vanishing_check(const DelignePair& pair, OrderPtr order);

}  // namespace weilcat
