#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/finvec.hpp"
#include "tslab/rational.hpp"
#include "tslab/tsirelson.hpp"

namespace tslab {

struct Space;

struct SumPart {
  Rational weight;
  std::shared_ptr<const Space> space;
};

/// Description of a sequence space with a computable norm.
struct Space {
  enum class Kind { lp, c0, xm, tsirelson, tsirelson_dual, sum };

  Kind kind = Kind::lp;
  /// lp and xm: the ell_p exponent. sum: the outer exponent.
  Exponent p{1L};
  /// xm: size of the sets E in the functionals f_E.
  std::uint32_t m = 1;
  TsirelsonParams tsirelson;
  std::vector<SumPart> parts;

  static Space lp(Exponent p);
  static Space c0();
  static Space xm(Exponent p, std::uint32_t m);
  static Space tsirelson_space(TsirelsonParams params);
  static Space tsirelson_dual(TsirelsonParams params);
  static Space sum(Exponent q, std::vector<SumPart> parts);

  bool is_sum() const { return kind == Kind::sum; }
  /// Throws InputError on invalid parameters.
  void validate() const;
  std::string describe() const;

  /// Norms come out exact or within a tolerance (not just as lower bounds).
  bool evaluable() const;
  /// Flipping coordinate signs never changes the norm.
  bool unconditional() const;
  /// The norm is invariant under an order-preserving relabelling of indices
  /// (and under any permutation).
  bool permutation_invariant() const;
};

std::string to_string(Space::Kind kind);

/// max(||x||_p, max over #E = m of |sum_{n in E} x_n|), with indices outside
/// the support available as zeros.
NormValue xm_norm(const FinVec& x, const Exponent& p, std::uint32_t m);

/// m^(1 - 1/p), the ell_p^* norm bound of the functionals f_E.
NormValue dual_functional_norm_bound(std::uint32_t m, const Exponent& p);

/// Throws InputError unless the point has the shape the space expects.
void check_shape(const Space& space, const Point& x);

/// Linear combination sum_k alpha_k y_k of points of one space.
Point combine(const Space& space, const std::vector<Point>& vectors, const std::vector<Rational>& alpha);

/// One sparse double vector per component (a single one for plain spaces).
using ApproxPoint = std::vector<ApproxVec>;
ApproxPoint to_approx(const Space& space, const Point& x);

/// Norm evaluation with caches for the dual solvers.
///
/// For T_q* with q > 1 the result is a lower_bound value carrying the
/// width of the dual bracket.
class NormEngine {
 public:
  explicit NormEngine(Limits limits = Limits{}, BracketOptions bracket = {});

  NormValue norm(const Space& space, const Point& x);
  /// Double-precision norm for search loops. Not available for dual
  /// Tsirelson spaces.
  double approx_norm(const Space& space, const ApproxPoint& x);

  const Limits& limits() const { return limits_; }
  DualSolver& dual_solver(const TsirelsonParams& params);

 private:
  NormValue plain_norm(const Space& space, const FinVec& x);

  Limits limits_;
  BracketOptions bracket_;
  std::map<std::string, std::unique_ptr<DualSolver>> solvers_;
};

NormValue norm(const Space& space, const Point& x, const Limits& limits = Limits{});

}  // namespace tslab
