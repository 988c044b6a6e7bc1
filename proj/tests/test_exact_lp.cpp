#include <gtest/gtest.h>

#include "credal/errors.hpp"
#include "credal/lp.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace credal {
namespace {

using lp::LinearProgram;
using lp::Sense;
using lp::Status;

Rational q(long n, long d = 1) { return ratio(n, d); }

TEST(Rational, ArithmeticStaysReduced) {
  const Rational a = q(1, 6) + q(1, 3);
  EXPECT_EQ(a.get_num(), 1);
  EXPECT_EQ(a.get_den(), 2);
  EXPECT_EQ(to_string(q(4, 8)), "1/2");
  EXPECT_EQ(to_string(q(-6, 3)), "-2");
  EXPECT_EQ(to_string(q(3, -9)), "-1/3");
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("2/6"), q(1, 3));
  EXPECT_EQ(parse_rational("-7"), q(-7));
  EXPECT_EQ(parse_rational("0.25"), q(1, 4));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, VectorFormatting) { EXPECT_EQ(to_string(RationalVector{q(1, 2), q(0), q(1, 2)}), "(1/2, 0, 1/2)"); }

TEST(LpSolve, MinimizeXOverNonnegativeIsZero) {
  LinearProgram prog = LinearProgram::with_variables(1);
  prog.objective = {1};
  const auto sol = lp::solve(prog);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_EQ(sol.value, 0);
  EXPECT_EQ(sol.primal[0], 0);
  EXPECT_TRUE(lp::certifies_optimality(prog, sol));
}

TEST(LpSolve, SimplexFaceValueMinusOne) {
  LinearProgram prog = LinearProgram::with_variables(2);
  prog.objective = {-1, -1};
  prog.add_row({1, 1}, Sense::kLessEqual, 1);
  const auto sol = lp::solve(prog);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_EQ(sol.value, -1);
  EXPECT_TRUE(lp::certifies_optimality(prog, sol));
}

TEST(LpSolve, TwoPredictionRuleProgramHasValueOneThird) {
  // Variables d(0,0), d(0,1), d(1,0), d(1,1), t. One row per generator of
  // the credal set with Pr(Y=1) = 2/3, classification loss.
  const std::vector<RationalMatrix> gens = {{{q(1, 3), q(2, 3)}, {0, 0}},
                                            {{q(1, 3), 0}, {0, q(2, 3)}},
                                            {{0, q(2, 3)}, {q(1, 3), 0}},
                                            {{0, 0}, {q(1, 3), q(2, 3)}}};
  LinearProgram prog = LinearProgram::with_variables(5);
  prog.objective = {0, 0, 0, 0, 1};
  prog.lower_bounds[4] = std::nullopt;
  for (const auto& g : gens) {
    RationalVector row(5);
    for (std::size_t x = 0; x < 2; ++x) {
      row[2 * x] = g[x][1];      // action 0 loses when y = 1
      row[2 * x + 1] = g[x][0];  // action 1 loses when y = 0
    }
    row[4] = -1;
    prog.add_row(row, Sense::kLessEqual, 0);
  }
  prog.add_row({1, 1, 0, 0, 0}, Sense::kEqual, 1);
  prog.add_row({0, 0, 1, 1, 0}, Sense::kEqual, 1);
  const auto sol = lp::solve(prog);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_EQ(sol.value, q(1, 3));
  EXPECT_TRUE(lp::certifies_optimality(prog, sol));
}

TEST(LpSolve, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible = LinearProgram::with_variables(1);
  infeasible.objective = {1};
  infeasible.add_row({1}, Sense::kLessEqual, -1);
  EXPECT_EQ(lp::solve(infeasible).status, Status::kInfeasible);

  LinearProgram unbounded = LinearProgram::with_variables(1);
  unbounded.objective = {-1};
  EXPECT_EQ(lp::solve(unbounded).status, Status::kUnbounded);
}

TEST(LpSolve, RejectsMalformedDimensions) {
  LinearProgram prog = LinearProgram::with_variables(2);
  prog.rows.push_back({1});
  prog.senses.push_back(Sense::kEqual);
  prog.rhs.push_back(1);
  EXPECT_THROW(lp::solve(prog), DimensionError);
}

TEST(ZeroSum, MatchingPennies) {
  const auto g = lp::zero_sum_value({{1, -1}, {-1, 1}});
  EXPECT_EQ(g.value, 0);
  EXPECT_EQ(g.row_mix, (RationalVector{q(1, 2), q(1, 2)}));
  EXPECT_EQ(g.col_mix, (RationalVector{q(1, 2), q(1, 2)}));
}

TEST(ZeroSum, SingletonMatrix) { EXPECT_EQ(lp::zero_sum_value({{5}}).value, 5); }

TEST(ZeroSum, PredictionGameAgainstPointMassesMatchesClosedForm) {
  // Rows: predict 0, predict 1. Columns: Y = 0 surely, Y = 1 surely.
  const RationalMatrix m = {{0, 1}, {1, 0}};
  const auto g = lp::zero_sum_value(m);
  const auto expected = oracle::solve_2x2(m[0][0], m[0][1], m[1][0], m[1][1]);
  EXPECT_EQ(g.value, expected.value);
  EXPECT_EQ(g.value, q(1, 2));
  EXPECT_EQ(g.row_mix[0], expected.row0_weight);
  EXPECT_EQ(lp::row_guarantee(m, g.row_mix), g.value);
  EXPECT_EQ(lp::col_guarantee(m, g.col_mix), g.value);
}

TEST(OptimalFace, WholeSimplexUnderZeroObjective) {
  LinearProgram prog = LinearProgram::with_variables(2);
  prog.add_row({1, 1}, Sense::kEqual, 1);
  auto v = lp::optimal_face_vertices(prog, 0);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<RationalVector>{{0, 1}, {1, 0}}));
}

TEST(OptimalFace, UniqueOptimum) {
  LinearProgram prog = LinearProgram::with_variables(2);
  prog.objective = {1, 0};
  prog.add_row({1, 1}, Sense::kEqual, 1);
  EXPECT_EQ(lp::optimal_face_vertices(prog, 0), (std::vector<RationalVector>{{0, 1}}));
}

TEST(OptimalFace, IndifferentPosteriorGameHasThreeVertices) {
  // Uniform posterior with classification loss over three outcomes: every
  // randomized action loses 2/3.
  LinearProgram prog = LinearProgram::with_variables(4);
  prog.objective = {0, 0, 0, 1};
  prog.lower_bounds[3] = std::nullopt;
  prog.add_row({q(2, 3), q(2, 3), q(2, 3), -1}, Sense::kLessEqual, 0);
  prog.add_row({1, 1, 1, 0}, Sense::kEqual, 1);
  const auto v = lp::optimal_face_vertices(prog, q(2, 3));
  EXPECT_EQ(v.size(), 3u);
}

TEST(OptimalFace, UnboundedFaceIsReported) {
  LinearProgram prog = LinearProgram::with_variables(2);
  prog.objective = {1, 0};
  EXPECT_THROW(lp::optimal_face_vertices(prog, 0), UnboundedFaceError);
}

LinearProgram random_program(testing::Gen& gen, std::size_t n, std::size_t m) {
  LinearProgram prog = LinearProgram::with_variables(n);
  for (auto& c : prog.objective) c = gen.uniform(-3, 3);
  for (std::size_t r = 0; r < m; ++r) {
    RationalVector row(n);
    for (auto& v : row) v = gen.uniform(-3, 3);
    const long s = gen.uniform(0, 2);
    const Sense sense = s == 0 ? Sense::kLessEqual : s == 1 ? Sense::kEqual : Sense::kGreaterEqual;
    prog.add_row(std::move(row), sense, gen.uniform(-2, 4));
  }
  prog.add_row(RationalVector(n, Rational(1)), Sense::kLessEqual, 10);
  return prog;
}

TEST(LpProperties, StrongDualityHoldsExactly) {
  testing::Gen gen(testing::kSeed);
  int optimal = 0;
  for (int i = 0; i < testing::kInstances; ++i) {
    const auto n = static_cast<std::size_t>(gen.uniform(2, 6));
    const auto m = static_cast<std::size_t>(gen.uniform(1, 5));
    const LinearProgram prog = random_program(gen, n, m);
    const auto sol = lp::solve(prog);
    if (sol.status != Status::kOptimal) {
      EXPECT_EQ(sol.status, Status::kInfeasible) << "instance " << i;
      continue;
    }
    ++optimal;
    EXPECT_TRUE(lp::certifies_optimality(prog, sol)) << "instance " << i;
    EXPECT_EQ(lp::dual_objective(prog, sol.dual), sol.value) << "instance " << i;
  }
  EXPECT_GT(optimal, testing::kInstances / 4);
}

TEST(LpProperties, TerminatesOnDegenerateLargePrograms) {
  testing::Gen gen(testing::kSeed + 1);
  LinearProgram prog = LinearProgram::with_variables(64);
  for (auto& c : prog.objective) c = gen.uniform(-2, 2);
  for (std::size_t r = 0; r < 63; ++r) {
    RationalVector row(64);
    for (auto& v : row) v = gen.uniform(-1, 1);
    prog.add_row(std::move(row), Sense::kLessEqual, 0);
  }
  prog.add_row(RationalVector(64, Rational(1)), Sense::kLessEqual, 1);
  const auto sol = lp::solve(prog);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_TRUE(lp::certifies_optimality(prog, sol));
}

TEST(LpProperties, GameValueFlipsUnderNegatedTranspose) {
  testing::Gen gen(testing::kSeed + 2);
  for (int i = 0; i < testing::kInstances; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 4));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 4));
    RationalMatrix m(r, RationalVector(c));
    RationalMatrix flipped(c, RationalVector(r));
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < c; ++b) {
        m[a][b] = ratio(gen.uniform(-6, 6), gen.uniform(1, 4));
        flipped[b][a] = -m[a][b];
      }
    }
    const auto g = lp::zero_sum_value(m);
    EXPECT_EQ(g.value, -lp::zero_sum_value(flipped).value) << "instance " << i;
    EXPECT_EQ(lp::row_guarantee(m, g.row_mix), g.value);
    EXPECT_EQ(lp::col_guarantee(m, g.col_mix), g.value);
  }
}

TEST(LpProperties, FaceVerticesAreOptimalBasicFeasiblePoints) {
  testing::Gen gen(testing::kSeed + 3);
  int checked = 0;
  for (int i = 0; i < testing::kInstances; ++i) {
    // Simplex-constrained programs have bounded faces.
    const auto n = static_cast<std::size_t>(gen.uniform(2, 5));
    LinearProgram prog = LinearProgram::with_variables(n);
    for (auto& c : prog.objective) c = gen.uniform(0, 2);
    prog.add_row(RationalVector(n, Rational(1)), Sense::kEqual, 1);
    if (gen.coin()) {
      RationalVector row(n);
      for (auto& v : row) v = gen.uniform(-1, 2);
      prog.add_row(std::move(row), Sense::kLessEqual, 1);
    }
    const auto sol = lp::solve(prog);
    if (sol.status != Status::kOptimal) continue;
    for (const auto& v : lp::optimal_face_vertices(prog, sol.value)) {
      ++checked;
      EXPECT_TRUE(lp::is_feasible_point(prog, v)) << "instance " << i;
      EXPECT_EQ(dot(prog.objective, v), sol.value) << "instance " << i;
      EXPECT_EQ(lp::active_rank(prog, v), n) << "instance " << i;
    }
  }
  EXPECT_GT(checked, testing::kInstances);
}

}  // namespace
}  // namespace credal
