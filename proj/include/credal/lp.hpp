#pragma once

#include <optional>
#include <vector>

#include "credal/rational.hpp"

namespace credal::lp {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

/// minimize objective . x
/// subject to rows[i] . x  (senses[i])  rhs[i]
///            x[j] >= lower_bounds[j]   (no bound when nullopt)
struct LinearProgram {
  RationalVector objective;
  RationalMatrix rows;
  std::vector<Sense> senses;
  RationalVector rhs;
  std::vector<std::optional<Rational>> lower_bounds;

  /// A program over `num_vars` non-negative variables with zero objective.
  static LinearProgram with_variables(std::size_t num_vars);

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  void add_row(RationalVector row, Sense sense, Rational rhs_value);

  /// Throws DimensionError when any row, sense list, rhs, or bound list
  /// disagrees with the objective length.
  void validate() const;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status status);

struct LpSolution {
  Status status = Status::kInfeasible;
  Rational value;
  RationalVector primal;
  /// One multiplier per row, signed for the minimisation form:
  /// <= rows carry dual <= 0, >= rows dual >= 0, = rows free.
  RationalVector dual;
};

/// Exact two-phase primal simplex with Bland's rule.
LpSolution solve(const LinearProgram& lp);

/// Checks primal feasibility, dual feasibility, complementary slackness,
/// and equality of primal and dual objective, all exactly.
bool certifies_optimality(const LinearProgram& lp, const LpSolution& solution);

/// Objective value of the dual program at solution.dual.
Rational dual_objective(const LinearProgram& lp, const RationalVector& dual);

bool is_feasible_point(const LinearProgram& lp, const RationalVector& x);

/// Zero-sum game where payoff[i][j] is the loss of the row player (who
/// minimises) when row i meets column j.
struct GameSolution {
  Rational value;
  RationalVector row_mix;
  RationalVector col_mix;
};

GameSolution zero_sum_value(const RationalMatrix& payoff);

/// Largest expected loss the column player can force against row_mix.
Rational row_guarantee(const RationalMatrix& payoff, const RationalVector& row_mix);
/// Smallest expected loss the row player can reach against col_mix.
Rational col_guarantee(const RationalMatrix& payoff, const RationalVector& col_mix);

/// Every vertex of {x feasible for lp : objective . x = optimum}.
/// Throws SizeLimitError when the face has more than kMaxFaceDimension
/// free directions, UnboundedFaceError when the face is not bounded.
inline constexpr std::size_t kMaxFaceDimension = 12;
std::vector<RationalVector> optimal_face_vertices(const LinearProgram& lp, const Rational& optimum);

/// Rank of the constraints of lp (rows and finite bounds) that hold with
/// equality at x.
std::size_t active_rank(const LinearProgram& lp, const RationalVector& x);

}  // namespace credal::lp
