#include "tslab/simplex.hpp"

#include "tslab/errors.hpp"

namespace tslab {

// Dictionary form: basic_r = d_r - sum_k a_rk * nonbasic_k,
// z = z0 + sum_k c_k * nonbasic_k. Variables 0..n-1 are the columns,
// n..n+m-1 the row slacks.
PackingLpResult solve_packing_lp(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                                 const std::vector<Rational>& objective) {
  const std::size_t m = rows.size();
  const std::size_t n = objective.size();
  if (rhs.size() != m) throw InputError("LP right-hand side has the wrong length");
  for (const auto& r : rows)
    if (r.size() != n) throw InputError("LP row has the wrong length");
  for (const auto& b : rhs)
    if (b < 0) throw InputError("packing LP needs a non-negative right-hand side");

  std::vector<std::vector<Rational>> a = rows;
  std::vector<Rational> d = rhs;
  std::vector<Rational> c = objective;
  Rational z0(0);
  std::vector<std::size_t> nonbasic(n), basic(m);
  for (std::size_t k = 0; k < n; ++k) nonbasic[k] = k;
  for (std::size_t r = 0; r < m; ++r) basic[r] = n + r;

  PackingLpResult result;
  while (true) {
    // Bland: entering variable with the smallest label among improving ones.
    std::size_t enter = n;
    for (std::size_t k = 0; k < n; ++k)
      if (c[k] > 0 && (enter == n || nonbasic[k] < nonbasic[enter])) enter = k;
    if (enter == n) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (a[r][enter] <= 0) continue;
      Rational ratio = d[r] / a[r][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basic[r] < basic[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw Error("linear program is unbounded");

    const Rational pivot = a[leave][enter];
    d[leave] /= pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == enter)
        a[leave][k] = Rational(1) / pivot;
      else
        a[leave][k] /= pivot;
    }
    const auto& prow = a[leave];
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const Rational f = a[r][enter];
      if (f == 0) continue;
      d[r] -= f * d[leave];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == enter)
          a[r][k] = -f * prow[k];
        else if (prow[k] != 0)
          a[r][k] -= f * prow[k];
      }
    }
    const Rational f = c[enter];
    z0 += f * d[leave];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == enter)
        c[k] = -f * prow[k];
      else if (prow[k] != 0)
        c[k] -= f * prow[k];
    }
    std::swap(basic[leave], nonbasic[enter]);
    ++result.pivots;
  }

  result.value = z0;
  result.primal.assign(n, Rational(0));
  result.dual.assign(m, Rational(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basic[r] < n) result.primal[basic[r]] = d[r];
  for (std::size_t k = 0; k < n; ++k)
    if (nonbasic[k] >= n) result.dual[nonbasic[k] - n] = -c[k];
  return result;
}

}  // namespace tslab
