#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credal/credal_set.hpp"

namespace credal {

/// Maps a credal set and an observation to an updated set; only its
/// Y-projection matters here.
class UpdateRule {
 public:
  enum class Kind { kStandard, kIgnore, kPartition, kTable };

  static UpdateRule standard();
  static UpdateRule ignore();
  static UpdateRule partition(Partition cells);
  /// images[x] is the updated set at x. Every entry must be present.
  static UpdateRule table(std::vector<CredalSet> images);

  Kind kind() const { return kind_; }
  const std::optional<Partition>& cells() const { return cells_; }

  /// Y-projection of the update at x; nullopt where undefined.
  std::optional<VPolytope> image_y(const CredalSet& p, std::size_t x) const;

  std::string describe(const ProblemSpace& space) const;

 private:
  explicit UpdateRule(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::optional<Partition> cells_;
  std::vector<CredalSet> table_;
};

struct EquivalenceClasses {
  /// Cells grouping x by equal Y-images; x with undefined images form one
  /// extra cell listed last.
  Partition classes;
  XSet undefined;
};

EquivalenceClasses equivalence_classes(const UpdateRule& rule, const CredalSet& p);

struct ClassReport {
  XSet cell;
  /// false when every generator gives the class probability zero; such
  /// classes are not tested.
  bool tested = false;
  std::optional<VPolytope> posterior;  // (P | cell)_Y
  VPolytope image;                     // the rule's image at any member
  bool forward = false;                // posterior within image
  bool backward = false;               // image within posterior
};

struct CalibrationReport {
  EquivalenceClasses classes;
  std::vector<ClassReport> per_class;  // defined classes only, in class order
  bool calibrated = false;
  bool semi_calibrated = false;
};

CalibrationReport check_calibration(const UpdateRule& rule, const CredalSet& p);

enum class Narrowness { kStrictlyNarrower, kNarrower, kNotNarrower };
const char* to_string(Narrowness n);

/// Compares images at every x in support_x. Throws
/// UndefinedConditionalError when either rule is undefined there.
Narrowness narrower(const UpdateRule& r1, const UpdateRule& r2, const CredalSet& p);

/// Equivalence classes of conditioning on c. Throws UnsupportedError when
/// p is not convex.
Partition refine_partition(const Partition& c, const CredalSet& p);

inline constexpr std::size_t kMaxPartitionX = 8;

/// All partitions of {0..n-1} in restricted-growth-string order.
std::vector<Partition> all_partitions(std::size_t n);

struct SharpPartition {
  Partition partition;
  /// Every partition with no strictly narrower partition, RGS order.
  std::vector<Partition> minimal;
  bool calibrated = false;
};

/// Throws UnsupportedError for non-convex p and SizeLimitError when
/// |X| > kMaxPartitionX.
SharpPartition sharp_partition(const CredalSet& p);

struct Sharpness {
  bool calibrated = false;
  bool sharp = false;
  /// A partition whose conditioning is calibrated and strictly narrower.
  std::optional<Partition> witness;
};

/// Same preconditions and errors as sharp_partition.
Sharpness is_sharply_calibrated(const UpdateRule& rule, const CredalSet& p);

}  // namespace credal
