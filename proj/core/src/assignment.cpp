#include <cmath>
#include <limits>

#include "chroma_infer/error.hpp"
#include "chroma_infer/inference.hpp"

namespace chroma_infer::inference {

namespace {

struct Hungarian {
  std::vector<std::size_t> row_to_col;
  std::vector<double> u;  // row potentials, 1-based
  std::vector<double> v;  // column potentials, 1-based
};

// Kuhn-Munkres with potentials, O(n^3), minimizing cost.
Hungarian hungarian_min(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = owner[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = cost[r0 - 1][col - 1] - u[r0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[owner[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  Hungarian h{std::vector<std::size_t>(n, 0), std::move(u), std::move(v)};
  for (std::size_t col = 1; col <= n; ++col) h.row_to_col[owner[col] - 1] = col - 1;
  return h;
}

}  // namespace

AssignmentSolution optimal_assignment_n(const MeritMatrix& merit) {
  const std::size_t n = merit.size();
  for (const auto& row : merit) {
    if (row.size() != n) {
      throw Error(ErrorCode::shape, "merit matrix must be square");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::invalid_input, "merit matrix has non-finite entries");
    }
  }
  AssignmentSolution solution;
  if (n == 0) return solution;

  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = -merit[i][j];
      scale = std::max(scale, std::abs(merit[i][j]));
    }
  }
  const Hungarian h = hungarian_min(cost);
  const double tol = 1e-9 * scale * static_cast<double>(n);
  // Optimal matchings are exactly the perfect matchings on tight edges.
  auto tight = [&](std::size_t i, std::size_t j) {
    return cost[i][j] - h.u[i + 1] - h.v[j + 1] <= tol;
  };

  std::vector<std::size_t> match = h.row_to_col;
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[match[i]] = i;

  // Fix rows in order, each to the smallest tight column reachable by an
  // alternating cycle through its current column.
  std::vector<bool> fixed_col(n, false);
  std::vector<std::size_t> next(n);
  std::vector<bool> reaches(n);
  std::vector<std::size_t> queue;
  double fixed = 0.0;
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t target = match[row];
    std::fill(reaches.begin(), reaches.end(), false);
    reaches[target] = true;
    queue.assign(1, target);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t to = queue[q];
      for (std::size_t c = 0; c < n; ++c) {
        if (reaches[c] || fixed_col[c] || !tight(owner[c], to)) continue;
        reaches[c] = true;
        next[c] = to;
        queue.push_back(c);
      }
    }
    std::size_t col = target;
    for (std::size_t c = 0; c < target; ++c) {
      if (!fixed_col[c] && reaches[c] && tight(row, c)) {
        col = c;
        break;
      }
    }
    if (col != target) {
      std::vector<std::size_t> path{col};
      while (path.back() != target) path.push_back(next[path.back()]);
      for (std::size_t t = path.size() - 1; t-- > 0;) {
        const std::size_t moving = owner[path[t]];
        match[moving] = path[t + 1];
        owner[path[t + 1]] = moving;
      }
      match[row] = col;
      owner[col] = row;
    }
    fixed_col[col] = true;
    fixed += merit[row][col];
  }
  solution.permutation = match;
  solution.total_merit = fixed;
  return solution;
}

}  // namespace chroma_infer::inference
