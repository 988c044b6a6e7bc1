#pragma once

#include <cstddef>
#include <vector>

#include "credal/rational.hpp"

namespace credal {

/// A finitely generated subset of R^dimension. With `convex` set the
/// represented set is the convex hull of the generators; otherwise it is
/// exactly the finite generator list.
class VPolytope {
 public:
  /// Throws DimensionError when a generator has the wrong length and
  /// InvalidArgumentError when the list is empty. Duplicates are dropped,
  /// first occurrence wins.
  VPolytope(std::size_t dimension, std::vector<RationalVector> generators, bool convex);

  std::size_t dimension() const { return dimension_; }
  const std::vector<RationalVector>& generators() const { return generators_; }
  bool convex() const { return convex_; }

 private:
  std::size_t dimension_;
  std::vector<RationalVector> generators_;
  bool convex_;
};

/// Exact membership; an LP feasibility test for convex sets.
bool member(const RationalVector& point, const VPolytope& set);

/// Every point of a lies in b. Throws UnsupportedError when a is a convex
/// continuum (more than one distinct generator) and b is a finite set.
bool subset(const VPolytope& a, const VPolytope& b);

bool set_equal(const VPolytope& a, const VPolytope& b);

/// a is a subset of b and not equal to it.
bool proper_subset(const VPolytope& a, const VPolytope& b);

/// Minimal generator list with the same point set: the extreme points for
/// convex sets, the deduplicated list otherwise. Generator order is kept.
VPolytope prune(const VPolytope& set);

/// Convex hull of a finite set (same generators, convex flag on).
VPolytope convex_closure(const VPolytope& set);

}  // namespace credal
