#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/finvec.hpp"
#include "tslab/ordinal.hpp"
#include "tslab/rational.hpp"

namespace tslab {

/// Parameters of the Tsirelson-type norm T_q[theta, S_xi].
struct TsirelsonParams {
  Rational theta{1, 2};
  Exponent q{1L};
  Ordinal xi = Ordinal::finite(1);
  /// Caps the recursion at this many levels, giving the iterate ||.||_n
  /// of the ell_inf-seeded iteration instead of the fixed point.
  std::optional<unsigned> max_depth;

  /// Throws InputError unless 0 < theta < 1, 1 <= q < inf and xi < w^w.
  void validate() const;
  bool exact_q() const { return q.is_one(); }
  std::string describe() const;
};

/// A full evaluation of ||x||_{T_q} on every contiguous slice of supp(x).
struct TsirelsonEvaluation {
  TsirelsonParams params;
  FinVec x;
  std::vector<std::uint32_t> support;
  NormValue value;
  /// Norms of the slices [a, b) of support positions.
  std::map<std::pair<int, int>, NormValue> slices;
  /// For q = 1: f in the norming set with f(x) = ||x||, coordinates
  /// theta^depth carrying the signs of x.
  std::optional<FinVec> norming_functional;
};

/// Evaluates the implicit-equation norm by recursion over admissible
/// partitions of suffixes of the support into consecutive slices.
TsirelsonEvaluation evaluate_tsirelson(const FinVec& x, const TsirelsonParams& params,
                                       const Limits& limits = Limits{});

/// Exact rational result when q = 1; double precision otherwise.
NormValue t_norm(const FinVec& x, const TsirelsonParams& params, const Limits& limits = Limits{});

/// Double-precision evaluation for the search loops; zeros are ignored.
double t_norm_approx(const ApproxVec& x, const TsirelsonParams& params, const Limits& limits = Limits{});

/// ||(|x_n|^q)||_{T_1}^{1/q}. Exact when q is an integer and the root is
/// rational.
NormValue t_norm_via_convexification(const FinVec& x, const TsirelsonParams& params,
                                     const Limits& limits = Limits{});

/// |computed - RHS| where RHS re-evaluates the implicit equation on x with
/// an explicit enumeration of admissible families, using the slice norms of
/// the given evaluation. Zero exactly for q = 1.
NormValue fixed_point_residual(const TsirelsonEvaluation& evaluation);
NormValue fixed_point_residual(const FinVec& x, const TsirelsonParams& params, const NormValue& computed,
                               const Limits& limits = Limits{});

/// The norming set of T_1[theta, S_xi] on {1..window}.
///
/// Stored as its non-negative members; the full set is their orbit under
/// coordinate sign changes. Generated from the unit functionals by
/// f = theta * (f_1 + ... + f_j) over admissible families with j >= 2.
struct FunctionalSet {
  std::uint32_t window = 0;
  unsigned depth = 0;
  TsirelsonParams params;
  std::vector<FinVec> functionals;

  bool contains(const FinVec& f) const;
  /// max over the set of |f(x)|.
  NormValue evaluate(const FinVec& x) const;
};

FunctionalSet functional_set(std::uint32_t window, const TsirelsonParams& params, const Limits& limits = Limits{});

struct DualResult {
  NormValue value;
  /// y with ||y||_T = 1 and x*(y) = value.
  FinVec witness;
  /// Weights lambda_f >= 0 on non-negative norming functionals with
  /// sum lambda_f f >= |x*| and sum lambda_f = value.
  std::vector<std::pair<FinVec, Rational>> certificate;
  unsigned cuts = 0;
  unsigned lp_solves = 0;
};

/// Exact dual norm of T_1*, solved as a linear program over the norming
/// set. Constraints are generated lazily: the recursion's norming functional
/// of the current LP optimum is the most violated constraint.
///
/// Keeps a pool of generated constraints between calls; results do not
/// depend on the pool, only the work does.
class DualSolver {
 public:
  explicit DualSolver(TsirelsonParams params, Limits limits = Limits{});
  DualResult solve(const FinVec& xstar);
  const TsirelsonParams& params() const { return params_; }

 private:
  TsirelsonParams params_;
  Limits limits_;
  std::vector<FinVec> pool_;
};

DualResult dual_norm(const FinVec& xstar, const TsirelsonParams& params, const Limits& limits = Limits{});

struct BracketOptions {
  unsigned restarts = 8;
  std::uint64_t seed = 0;
};

struct DualBracket {
  NormValue lower;
  NormValue upper;
  /// Direction y realising the lower ratio x*(y) / ||y||_{T_q}.
  FinVec witness;
};

/// Bounds on ||x*||_{T_q*} without solving the dual exactly.
///
/// lower = max(||x*||_p, best ratio x*(y)/||y||_{T_q} from a seeded
/// multi-start coordinate ascent); upper = min(||x*||_1, recursive bound
/// theta^{-1/q} ||(upper(E_i x*))||_p over admissible covering partitions).
DualBracket dual_norm_bracket(const FinVec& xstar, const TsirelsonParams& params, const BracketOptions& options = {},
                              const Limits& limits = Limits{});

/// The upper side of dual_norm_bracket on its own.
NormValue dual_norm_upper(const FinVec& xstar, const TsirelsonParams& params, const Limits& limits = Limits{});

}  // namespace tslab
