#include "credal/polytope.hpp"

#include <algorithm>
#include <string>

#include "credal/errors.hpp"
#include "credal/lp.hpp"

namespace credal {

VPolytope::VPolytope(std::size_t dimension, std::vector<RationalVector> generators, bool convex)
    : dimension_(dimension), convex_(convex) {
  if (generators.empty()) throw InvalidArgumentError("polytope needs at least one generator");
  for (auto& g : generators) {
    if (g.size() != dimension) {
      throw DimensionError("generator of length " + std::to_string(g.size()) + " in a polytope of dimension " +
                           std::to_string(dimension));
    }
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) {
      generators_.push_back(std::move(g));
    }
  }
}

namespace {

bool in_convex_hull(const RationalVector& point, const std::vector<const RationalVector*>& gens) {
  for (const auto* g : gens) {
    if (*g == point) return true;
  }
  if (gens.empty()) return false;
  const std::size_t k = gens.size();
  const std::size_t d = point.size();
  lp::LinearProgram prog = lp::LinearProgram::with_variables(k);
  for (std::size_t c = 0; c < d; ++c) {
    RationalVector row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = (*gens[i])[c];
    prog.add_row(std::move(row), lp::Sense::kEqual, point[c]);
  }
  prog.add_row(RationalVector(k, Rational(1)), lp::Sense::kEqual, 1);
  return lp::solve(prog).status == lp::Status::kOptimal;
}

}  // namespace

bool member(const RationalVector& point, const VPolytope& set) {
  if (point.size() != set.dimension()) {
    throw DimensionError("point of length " + std::to_string(point.size()) + " tested against a polytope of dimension " +
                         std::to_string(set.dimension()));
  }
  if (!set.convex()) {
    const auto& g = set.generators();
    return std::find(g.begin(), g.end(), point) != g.end();
  }
  std::vector<const RationalVector*> gens;
  for (const auto& g : set.generators()) gens.push_back(&g);
  return in_convex_hull(point, gens);
}

bool subset(const VPolytope& a, const VPolytope& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("subset: polytopes of different dimension");
  if (a.convex() && !b.convex() && a.generators().size() > 1) {
    throw UnsupportedError("subset: a convex set with several points cannot be compared against a finite set");
  }
  for (const auto& g : a.generators()) {
    if (!member(g, b)) return false;
  }
  return true;
}

bool set_equal(const VPolytope& a, const VPolytope& b) {
  // A finite set equals a convex set only when both are one point.
  if (a.convex() != b.convex()) {
    if (a.dimension() != b.dimension()) throw DimensionError("set_equal: polytopes of different dimension");
    return a.generators().size() == 1 && a.generators() == b.generators();
  }
  return subset(a, b) && subset(b, a);
}

bool proper_subset(const VPolytope& a, const VPolytope& b) { return subset(a, b) && !subset(b, a); }

VPolytope prune(const VPolytope& set) {
  if (!set.convex()) return set;
  std::vector<RationalVector> kept = set.generators();
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<const RationalVector*> others;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(&kept[j]);
    }
    if (in_convex_hull(kept[i], others)) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return VPolytope(set.dimension(), std::move(kept), true);
}

VPolytope convex_closure(const VPolytope& set) { return VPolytope(set.dimension(), set.generators(), true); }

}  // namespace credal
