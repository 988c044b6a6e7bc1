#include "credal/lp.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>

#include "credal/errors.hpp"
#include "linalg.hpp"

namespace credal::lp {

LinearProgram LinearProgram::with_variables(std::size_t num_vars) {
  LinearProgram lp;
  lp.objective.assign(num_vars, Rational(0));
  lp.lower_bounds.assign(num_vars, Rational(0));
  return lp;
}

void LinearProgram::add_row(RationalVector row, Sense sense, Rational rhs_value) {
  rows.push_back(std::move(row));
  senses.push_back(sense);
  rhs.push_back(std::move(rhs_value));
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (senses.size() != rows.size() || rhs.size() != rows.size()) {
    throw DimensionError("linear program: " + std::to_string(rows.size()) + " rows but " +
                         std::to_string(senses.size()) + " senses and " + std::to_string(rhs.size()) +
                         " right-hand sides");
  }
  if (lower_bounds.size() != n) {
    throw DimensionError("linear program: " + std::to_string(lower_bounds.size()) + " bounds for " +
                         std::to_string(n) + " variables");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw DimensionError("linear program: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                           " columns, objective has " + std::to_string(n));
    }
  }
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense simplex tableau over the standard form  A u = b, u >= 0, b >= 0.
struct Tableau {
  RationalMatrix a;
  RationalVector b;
  std::vector<std::size_t> basis;
  RationalVector reduced;  // c_j - c_B B^-1 A_j
  Rational value;          // c_B B^-1 b
  std::vector<bool> may_enter;

  void price(const RationalVector& cost) {
    const std::size_t n = cost.size();
    reduced = cost;
    value = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      value += cb * b[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (a[i][j] != 0) reduced[j] -= cb * a[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t n = reduced.size();
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = 0; j < n; ++j) {
      if (a[r][j] != 0) a[r][j] *= inv;
    }
    b[r] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      }
      b[i] -= f * b[r];
    }
    if (reduced[c] != 0) {
      const Rational f = reduced[c];
      for (std::size_t j = 0; j < n; ++j) {
        if (a[r][j] != 0) reduced[j] -= f * a[r][j];
      }
      value += f * b[r];
    }
    basis[r] = c;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving
  // variable among ratio ties. Returns false when unbounded.
  bool run() {
    for (;;) {
      std::size_t enter = reduced.size();
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (may_enter[j] && reduced[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == reduced.size()) return true;

      std::size_t leave = a.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = b[i] / a[i][enter];
        if (leave == a.size() || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == a.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();

  // Column layout: structural columns (one per bounded variable, two per
  // free variable), then one slack/surplus per inequality row, then one
  // artificial per >= or = row.
  struct VarMap {
    std::size_t pos;
    std::size_t neg;  // == pos when bounded
  };
  std::vector<VarMap> var_cols(n);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower_bounds[j]) {
      var_cols[j] = {ncols, ncols};
      ncols += 1;
    } else {
      var_cols[j] = {ncols, ncols + 1};
      ncols += 2;
    }
  }
  const std::size_t num_structural = ncols;

  RationalVector shifted_rhs = lp.rhs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.lower_bounds[j] && *lp.lower_bounds[j] != 0 && lp.rows[i][j] != 0) {
        shifted_rhs[i] -= lp.rows[i][j] * *lp.lower_bounds[j];
      }
    }
  }
  std::vector<bool> flipped(m, false);
  std::vector<Sense> senses = lp.senses;
  for (std::size_t i = 0; i < m; ++i) {
    if (shifted_rhs[i] < 0) {
      flipped[i] = true;
      shifted_rhs[i] = -shifted_rhs[i];
      if (senses[i] == Sense::kLessEqual) senses[i] = Sense::kGreaterEqual;
      else if (senses[i] == Sense::kGreaterEqual) senses[i] = Sense::kLessEqual;
    }
  }

  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (senses[i] != Sense::kEqual) slack_col[i] = ncols++;
  }
  const std::size_t first_artificial = ncols;
  std::vector<std::size_t> identity_col(m);
  for (std::size_t i = 0; i < m; ++i) {
    identity_col[i] = senses[i] == Sense::kLessEqual ? slack_col[i] : ncols++;
  }

  Tableau t;
  t.a.assign(m, RationalVector(ncols, Rational(0)));
  t.b = shifted_rhs;
  t.basis = identity_col;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational sign = flipped[i] ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.rows[i][j] == 0) continue;
      t.a[i][var_cols[j].pos] = sign * lp.rows[i][j];
      if (var_cols[j].neg != var_cols[j].pos) t.a[i][var_cols[j].neg] = -sign * lp.rows[i][j];
    }
    if (senses[i] == Sense::kLessEqual) t.a[i][slack_col[i]] = 1;
    if (senses[i] == Sense::kGreaterEqual) t.a[i][slack_col[i]] = -1;
    if (senses[i] != Sense::kLessEqual) t.a[i][identity_col[i]] = 1;
  }

  LpSolution out;
  t.may_enter.assign(ncols, true);

  if (first_artificial < ncols) {
    RationalVector phase1(ncols, Rational(0));
    for (std::size_t j = first_artificial; j < ncols; ++j) phase1[j] = 1;
    t.price(phase1);
    t.run();
    if (t.value > 0) {
      out.status = Status::kInfeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // that keep one are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < ncols; ++j) t.may_enter[j] = false;
  }

  RationalVector phase2(ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[var_cols[j].pos] = lp.objective[j];
    if (var_cols[j].neg != var_cols[j].pos) phase2[var_cols[j].neg] = -lp.objective[j];
  }
  t.price(phase2);
  if (!t.run()) {
    out.status = Status::kUnbounded;
    return out;
  }

  RationalVector u(ncols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) u[t.basis[i]] = t.b[i];
  out.primal.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower_bounds[j]) {
      out.primal[j] = *lp.lower_bounds[j] + u[var_cols[j].pos];
    } else {
      out.primal[j] = u[var_cols[j].pos] - u[var_cols[j].neg];
    }
  }
  out.dual.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    const Rational y = -t.reduced[identity_col[i]];
    out.dual[i] = flipped[i] ? Rational(-y) : y;
  }
  out.value = dot(lp.objective, out.primal);
  out.status = Status::kOptimal;
  (void)num_structural;
  assert(certifies_optimality(lp, out));
  return out;
}

bool is_feasible_point(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.lower_bounds[j] && x[j] < *lp.lower_bounds[j]) return false;
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const Rational lhs = dot(lp.rows[i], x);
    switch (lp.senses[i]) {
      case Sense::kLessEqual:
        if (lhs > lp.rhs[i]) return false;
        break;
      case Sense::kEqual:
        if (lhs != lp.rhs[i]) return false;
        break;
      case Sense::kGreaterEqual:
        if (lhs < lp.rhs[i]) return false;
        break;
    }
  }
  return true;
}

namespace {

RationalVector reduced_costs(const LinearProgram& lp, const RationalVector& dual) {
  RationalVector r = lp.objective;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (dual[i] == 0) continue;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) r[j] -= dual[i] * lp.rows[i][j];
  }
  return r;
}

}  // namespace

Rational dual_objective(const LinearProgram& lp, const RationalVector& dual) {
  Rational total = dot(lp.rhs, dual);
  const RationalVector r = reduced_costs(lp, dual);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower_bounds[j]) total += *lp.lower_bounds[j] * r[j];
  }
  return total;
}

bool certifies_optimality(const LinearProgram& lp, const LpSolution& s) {
  if (s.status != Status::kOptimal) return false;
  if (s.dual.size() != lp.num_rows()) return false;
  if (!is_feasible_point(lp, s.primal)) return false;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (lp.senses[i] == Sense::kLessEqual && s.dual[i] > 0) return false;
    if (lp.senses[i] == Sense::kGreaterEqual && s.dual[i] < 0) return false;
    if (s.dual[i] != 0 && dot(lp.rows[i], s.primal) != lp.rhs[i]) return false;
  }
  const RationalVector r = reduced_costs(lp, s.dual);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (!lp.lower_bounds[j]) {
      if (r[j] != 0) return false;
    } else {
      if (r[j] < 0) return false;
      if (r[j] != 0 && s.primal[j] != *lp.lower_bounds[j]) return false;
    }
  }
  return s.value == dot(lp.objective, s.primal) && s.value == dual_objective(lp, s.dual);
}

Rational row_guarantee(const RationalMatrix& payoff, const RationalVector& row_mix) {
  Rational worst;
  for (std::size_t j = 0; j < payoff.front().size(); ++j) {
    Rational v = 0;
    for (std::size_t i = 0; i < payoff.size(); ++i) v += row_mix[i] * payoff[i][j];
    if (j == 0 || v > worst) worst = v;
  }
  return worst;
}

Rational col_guarantee(const RationalMatrix& payoff, const RationalVector& col_mix) {
  Rational best;
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    const Rational v = dot(payoff[i], col_mix);
    if (i == 0 || v < best) best = v;
  }
  return best;
}

GameSolution zero_sum_value(const RationalMatrix& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw DimensionError("zero_sum_value: empty payoff matrix");
  const std::size_t rows = payoff.size();
  const std::size_t cols = payoff.front().size();
  for (const auto& row : payoff) {
    if (row.size() != cols) throw DimensionError("zero_sum_value: ragged payoff matrix");
  }

  // Variables: row mix p (rows of them), then the value v (free).
  LinearProgram lp = LinearProgram::with_variables(rows + 1);
  lp.objective[rows] = 1;
  lp.lower_bounds[rows] = std::nullopt;
  for (std::size_t j = 0; j < cols; ++j) {
    RationalVector r(rows + 1, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) r[i] = payoff[i][j];
    r[rows] = -1;
    lp.add_row(std::move(r), Sense::kLessEqual, 0);
  }
  RationalVector simplex(rows + 1, Rational(1));
  simplex[rows] = 0;
  lp.add_row(std::move(simplex), Sense::kEqual, 1);

  const LpSolution sol = solve(lp);
  if (sol.status != Status::kOptimal) throw std::logic_error("zero_sum_value: game LP not optimal");

  GameSolution g;
  g.value = sol.value;
  g.row_mix.assign(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(rows));
  g.col_mix.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) g.col_mix[j] = -sol.dual[j];
  if (row_guarantee(payoff, g.row_mix) != g.value || col_guarantee(payoff, g.col_mix) != g.value) {
    throw std::logic_error("zero_sum_value: extracted strategies do not form a saddle point");
  }
  return g;
}

namespace {

struct Inequality {
  RationalVector coeffs;  // in face coordinates
  Rational bound;         // coeffs . z <= bound
  bool operator<(const Inequality& o) const {
    return coeffs != o.coeffs ? coeffs < o.coeffs : bound < o.bound;
  }
};

// Adds `row` to an echelon basis of normalized rows; false if dependent.
bool extend_echelon(RationalMatrix& echelon, std::vector<std::size_t>& pivots, RationalVector row) {
  for (std::size_t r = 0; r < echelon.size(); ++r) {
    const std::size_t p = pivots[r];
    if (row[p] == 0) continue;
    const Rational f = row[p];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (echelon[r][j] != 0) row[j] -= f * echelon[r][j];
    }
  }
  std::size_t p = 0;
  while (p < row.size() && row[p] == 0) ++p;
  if (p == row.size()) return false;
  const Rational inv = 1 / row[p];
  for (auto& v : row) v *= inv;
  echelon.push_back(std::move(row));
  pivots.push_back(p);
  return true;
}

// Extreme rays of the cone {r : a_i . r <= 0}, built by starting from a
// simplicial cone on independent rows and cutting with the rest one row at
// a time. Two rays span a 2-face iff their common tight rows have rank
// dim - 2. Requires the rows to have full rank, so the cone is pointed.
class DoubleDescription {
 public:
  static constexpr std::size_t kMaxRays = 200'000;

  /// nullopt when the rows do not have full rank.
  static std::optional<std::vector<RationalVector>> rays(const RationalMatrix& rows) {
    const std::size_t dim = rows.front().size();
    RationalMatrix echelon;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < rows.size() && basis.size() < dim; ++i) {
      if (extend_echelon(echelon, pivots, rows[i])) basis.push_back(i);
    }
    if (basis.size() < dim) return std::nullopt;

    DoubleDescription dd(rows, dim);
    RationalMatrix b;
    for (std::size_t i : basis) b.push_back(rows[i]);
    for (std::size_t j = 0; j < dim; ++j) {
      RationalVector rhs(dim, Rational(0));
      rhs[j] = -1;
      Ray r{*detail::solve_square(b, rhs), {}};
      for (std::size_t i = 0; i < dim; ++i) {
        if (i != j) r.tight.push_back(basis[i]);
      }
      dd.rays_.push_back(std::move(r));
    }
    std::vector<bool> in_basis(rows.size(), false);
    for (std::size_t i : basis) in_basis[i] = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!in_basis[i]) dd.cut(i);
    }
    std::vector<RationalVector> out;
    for (auto& r : dd.rays_) out.push_back(std::move(r.z));
    return out;
  }

 private:
  struct Ray {
    RationalVector z;
    std::vector<std::size_t> tight;  // ascending row ids
  };

  DoubleDescription(const RationalMatrix& rows, std::size_t dim) : rows_(rows), dim_(dim) {}

  static void insert_sorted(std::vector<std::size_t>& v, std::size_t id) {
    v.insert(std::upper_bound(v.begin(), v.end(), id), id);
  }

  void cut(std::size_t id) {
    const RationalVector& a = rows_[id];
    std::vector<Rational> value(rays_.size());
    bool any_out = false;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      value[i] = dot(a, rays_[i].z);
      any_out = any_out || value[i] > 0;
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (value[i] > 0) continue;
      Ray r = rays_[i];
      if (value[i] == 0) insert_sorted(r.tight, id);
      next.push_back(std::move(r));
    }
    if (any_out) {
      for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (value[i] >= 0) continue;
        for (std::size_t j = 0; j < rays_.size(); ++j) {
          if (value[j] <= 0) continue;
          std::vector<std::size_t> common;
          std::set_intersection(rays_[i].tight.begin(), rays_[i].tight.end(), rays_[j].tight.begin(),
                                rays_[j].tight.end(), std::back_inserter(common));
          if (!spans_face(common)) continue;
          RationalVector z(dim_);
          for (std::size_t c = 0; c < dim_; ++c) z[c] = value[j] * rays_[i].z[c] - value[i] * rays_[j].z[c];
          normalize(z);
          insert_sorted(common, id);
          next.push_back({std::move(z), std::move(common)});
          if (next.size() > kMaxRays) throw SizeLimitError("optimal face has too many vertices to enumerate");
        }
      }
    }
    rays_ = std::move(next);
  }

  bool spans_face(const std::vector<std::size_t>& common) const {
    if (dim_ == 2) return true;
    if (common.size() + 2 < dim_) return false;
    RationalMatrix echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t r : common) {
      extend_echelon(echelon, pivots, rows_[r]);
      if (echelon.size() + 2 == dim_) return true;
    }
    return false;
  }

  // Scales to first nonzero entry of magnitude 1; rays are directions.
  static void normalize(RationalVector& z) {
    for (const auto& v : z) {
      if (v == 0) continue;
      const Rational scale = abs(v);
      for (auto& w : z) w /= scale;
      return;
    }
  }

  const RationalMatrix& rows_;
  std::size_t dim_;
  std::vector<Ray> rays_;
};

}  // namespace

std::vector<RationalVector> optimal_face_vertices(const LinearProgram& lp, const Rational& optimum) {
  lp.validate();
  const std::size_t n = lp.num_vars();

  RationalMatrix eq_rows;
  RationalVector eq_rhs;
  std::vector<std::pair<RationalVector, Rational>> le_rows;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    switch (lp.senses[i]) {
      case Sense::kEqual:
        eq_rows.push_back(lp.rows[i]);
        eq_rhs.push_back(lp.rhs[i]);
        break;
      case Sense::kLessEqual:
        le_rows.emplace_back(lp.rows[i], lp.rhs[i]);
        break;
      case Sense::kGreaterEqual: {
        RationalVector neg = lp.rows[i];
        for (auto& v : neg) v = -v;
        le_rows.emplace_back(std::move(neg), -lp.rhs[i]);
        break;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.lower_bounds[j]) continue;
    RationalVector e(n, Rational(0));
    e[j] = -1;
    le_rows.emplace_back(std::move(e), -*lp.lower_bounds[j]);
  }
  eq_rows.push_back(lp.objective);
  eq_rhs.push_back(optimum);

  const auto affine = detail::solve_affine(eq_rows, eq_rhs, n);
  if (!affine) return {};
  const std::size_t k = affine->nullspace.size();

  // Re-express each inequality in the coordinates z of x = x0 + N z.
  std::set<Inequality> unique;
  for (const auto& [row, rhs] : le_rows) {
    Inequality q;
    q.coeffs.assign(k, Rational(0));
    for (std::size_t c = 0; c < k; ++c) q.coeffs[c] = dot(row, affine->nullspace[c]);
    q.bound = rhs - dot(row, affine->particular);
    bool zero = true;
    for (const auto& v : q.coeffs) zero = zero && v == 0;
    if (zero) {
      if (q.bound < 0) return {};
      continue;
    }
    unique.insert(std::move(q));
  }
  const std::vector<Inequality> ineqs(unique.begin(), unique.end());

  auto lift = [&](const RationalVector& z) {
    RationalVector x = affine->particular;
    for (std::size_t c = 0; c < k; ++c) {
      if (z[c] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) x[j] += z[c] * affine->nullspace[c][j];
    }
    return x;
  };

  if (k == 0) return {affine->particular};
  if (k > kMaxFaceDimension) {
    throw SizeLimitError("optimal face has " + std::to_string(k) + " free directions; limit is " +
                         std::to_string(kMaxFaceDimension));
  }

  // Homogenize: z is a vertex iff (z, 1) spans an extreme ray of
  // {(z, s) : a . z - b s <= 0, s >= 0}; rays with s = 0 are directions of
  // unboundedness.
  RationalMatrix cone;
  for (const auto& q : ineqs) {
    RationalVector row = q.coeffs;
    row.push_back(-q.bound);
    cone.push_back(std::move(row));
  }
  RationalVector scale_row(k + 1, Rational(0));
  scale_row[k] = -1;
  cone.push_back(std::move(scale_row));

  const auto rays = DoubleDescription::rays(cone);
  if (!rays) {
    // Not pointed: the face, if nonempty, contains a line.
    LinearProgram feas;
    feas.objective.assign(k, Rational(0));
    feas.lower_bounds.assign(k, std::nullopt);
    for (const auto& q : ineqs) feas.add_row(q.coeffs, Sense::kLessEqual, q.bound);
    if (solve(feas).status == Status::kInfeasible) return {};
    throw UnboundedFaceError("optimal face is unbounded");
  }
  std::vector<RationalVector> out;
  bool recession = false;
  for (const auto& r : *rays) {
    if (r[k] == 0) {
      recession = true;
      continue;
    }
    RationalVector z(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& v : z) v /= r[k];
    out.push_back(lift(z));
  }
  if (recession && !out.empty()) throw UnboundedFaceError("optimal face is unbounded");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t active_rank(const LinearProgram& lp, const RationalVector& x) {
  RationalMatrix active;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (lp.senses[i] == Sense::kEqual || dot(lp.rows[i], x) == lp.rhs[i]) active.push_back(lp.rows[i]);
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower_bounds[j] && x[j] == *lp.lower_bounds[j]) {
      RationalVector e(lp.num_vars(), Rational(0));
      e[j] = 1;
      active.push_back(std::move(e));
    }
  }
  return detail::rank(std::move(active));
}

}  // namespace credal::lp
