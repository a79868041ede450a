#include "knapq/simplex.hpp"

#include <algorithm>

#include "knapq/errors.hpp"

namespace knapq {

int BoxLpSolution::fractional_count() const {
  int c = 0;
  for (const Rat& v : x)
    if (v > 0 && v < 1) ++c;
  return c;
}

namespace {

// Dense tableau: rows 0..m-1 hold A|b, `z` holds reduced costs (z_j - c_j;
// optimal when all >= 0 for a maximization) with the objective value in its
// last entry.
struct Tableau {
  std::size_t m, ncols;  // ncols excludes the rhs column
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> z;
  std::vector<std::size_t> basis;  // basic column per row
  std::vector<bool> barred;        // columns excluded from entering

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rat>& pr = rows[r];
    const Rat p = pr[c];
    for (Rat& v : pr) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const Rat f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * pr[j];
    }
    const Rat f = z[c];
    if (f != 0)
      for (std::size_t j = 0; j <= ncols; ++j) z[j] -= f * pr[j];
    basis[r] = c;
  }

  void load_objective(const std::vector<Rat>& c) {
    z.assign(ncols + 1, Rat(0));
    for (std::size_t j = 0; j < ncols; ++j) z[j] = -c[j];
    for (std::size_t r = 0; r < m; ++r) {
      const Rat& cb = c[basis[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) z[j] += cb * rows[r][j];
    }
  }

  // Primal simplex with Bland's rule. Returns false on unboundedness.
  bool maximize() {
    for (;;) {
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (!barred[j] && z[j] < 0) {
          enter = j;
          break;
        }
      if (enter == ncols) return true;
      std::size_t leave = m;
      Rat best_ratio;
      for (std::size_t r = 0; r < m; ++r) {
        if (rows[r][enter] <= 0) continue;
        Rat ratio = rows[r][ncols] / rows[r][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

std::optional<BoxLpSolution> solve_box_lp(const BoxLpProblem& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.weight.size() != n)
    throw ParamError("box LP: objective/weight size mismatch");
  if (lp.cardinality < 0) throw ParamError("box LP: negative cardinality");
  if (static_cast<std::size_t>(lp.cardinality) > n) return std::nullopt;
  if (lp.weight_bound < 0) return std::nullopt;

  // Columns: x_0..x_{n-1}, s_0..s_{n-1} (x_i + s_i = 1), t (weight slack),
  // a (artificial for the cardinality row).
  const std::size_t col_x = 0, col_s = n, col_t = 2 * n, col_a = 2 * n + 1;
  Tableau T;
  T.m = n + 2;
  T.ncols = 2 * n + 2;
  T.rows.assign(T.m, std::vector<Rat>(T.ncols + 1, Rat(0)));
  T.basis.resize(T.m);
  T.barred.assign(T.ncols, false);

  for (std::size_t i = 0; i < n; ++i) {  // x_i + s_i = 1
    T.rows[i][col_x + i] = 1;
    T.rows[i][col_s + i] = 1;
    T.rows[i][T.ncols] = 1;
    T.basis[i] = col_s + i;
  }
  const std::size_t row_w = n, row_card = n + 1;
  for (std::size_t i = 0; i < n; ++i) T.rows[row_w][col_x + i] = lp.weight[i];
  T.rows[row_w][col_t] = 1;
  T.rows[row_w][T.ncols] = lp.weight_bound;
  T.basis[row_w] = col_t;
  for (std::size_t i = 0; i < n; ++i) T.rows[row_card][col_x + i] = 1;
  T.rows[row_card][col_a] = 1;
  T.rows[row_card][T.ncols] = lp.cardinality;
  T.basis[row_card] = col_a;

  // Phase 1: maximize -a.
  std::vector<Rat> phase1(T.ncols, Rat(0));
  phase1[col_a] = -1;
  T.load_objective(phase1);
  if (!T.maximize()) throw Error("box LP: phase 1 unbounded");
  if (T.z[T.ncols] != 0) return std::nullopt;  // cardinality unreachable

  // Drive a degenerate artificial out of the basis if needed.
  for (std::size_t r = 0; r < T.m; ++r) {
    if (T.basis[r] != col_a) continue;
    for (std::size_t j = 0; j < col_a; ++j)
      if (T.rows[r][j] != 0) {
        T.pivot(r, j);
        break;
      }
  }
  T.barred[col_a] = true;

  // Phase 2: the real objective.
  std::vector<Rat> phase2(T.ncols, Rat(0));
  for (std::size_t i = 0; i < n; ++i) phase2[col_x + i] = lp.objective[i];
  T.load_objective(phase2);
  if (!T.maximize()) throw Error("box LP: unbounded (polytope should be bounded)");

  BoxLpSolution sol;
  sol.x.assign(n, Rat(0));
  for (std::size_t r = 0; r < T.m; ++r)
    if (T.basis[r] < n) sol.x[T.basis[r]] = T.rows[r][T.ncols];
  sol.objective = 0;
  for (std::size_t i = 0; i < n; ++i)
    sol.objective += lp.objective[i] * sol.x[i];
  return sol;
}

std::optional<BoxLpSolution> solve_box_lp_vertex_scan(const BoxLpProblem& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.cardinality < 0 || static_cast<std::size_t>(lp.cardinality) > n)
    return std::nullopt;
  if (lp.weight_bound < 0) return std::nullopt;

  std::optional<BoxLpSolution> best;
  auto consider = [&](const std::vector<Rat>& x) {
    Rat obj = 0;
    for (std::size_t i = 0; i < n; ++i) obj += lp.objective[i] * x[i];
    if (!best || obj > best->objective) {
      best = BoxLpSolution{x, obj};
    }
  };

  // Integral vertices: exact-cardinality 0/1 points within the weight bound.
  std::vector<std::size_t> comb(static_cast<std::size_t>(lp.cardinality));
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
  auto emit_integral = [&]() {
    Rat w = 0;
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i : comb) {
      w += lp.weight[i];
      x[i] = 1;
    }
    if (w <= lp.weight_bound) consider(x);
  };
  if (comb.empty()) {
    std::vector<Rat> x(n, Rat(0));
    consider(x);
  } else {
    for (;;) {
      emit_integral();
      // next combination
      std::size_t i = comb.size();
      while (i > 0 && comb[i - 1] == n - comb.size() + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < comb.size(); ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  // Two-fractional vertices: choose the pair {f, g}, the set of ones among
  // the rest, and make both the cardinality and the weight rows tight.
  if (lp.cardinality >= 1 && n >= 2) {
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = f + 1; g < n; ++g) {
        if (lp.weight[f] == lp.weight[g]) continue;  // singular pair
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
          if (i != f && i != g) rest.push_back(i);
        const std::size_t r = rest.size();
        for (std::uint64_t mask = 0; mask < (1ull << r); ++mask) {
          int ones = __builtin_popcountll(mask);
          // x_f + x_g = cardinality - ones must be in (0, 2)
          Rat target = Rat(lp.cardinality - ones);
          if (target <= 0 || target >= 2) continue;
          Rat wsum = 0;
          for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) wsum += lp.weight[rest[i]];
          // w_f x_f + w_g x_g = weight_bound - wsum, x_f + x_g = target
          Rat rhs = lp.weight_bound - wsum;
          Rat xf = (rhs - lp.weight[g] * target) /
                   (lp.weight[f] - lp.weight[g]);
          Rat xg = target - xf;
          if (!(xf > 0 && xf < 1 && xg > 0 && xg < 1)) continue;
          std::vector<Rat> x(n, Rat(0));
          for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) x[rest[i]] = 1;
          x[f] = xf;
          x[g] = xg;
          consider(x);
        }
      }
    }
  }
  return best;
}

}  // namespace knapq
