#include "credal/calibration.hpp"

#include <algorithm>
#include <map>

#include "credal/errors.hpp"

namespace credal {

UpdateRule UpdateRule::standard() { return UpdateRule(Kind::kStandard); }

UpdateRule UpdateRule::ignore() { return UpdateRule(Kind::kIgnore); }

UpdateRule UpdateRule::partition(Partition cells) {
  UpdateRule r(Kind::kPartition);
  r.cells_ = std::move(cells);
  return r;
}

UpdateRule UpdateRule::table(std::vector<CredalSet> images) {
  if (images.empty()) throw InvalidArgumentError("update table has no entries");
  UpdateRule r(Kind::kTable);
  r.table_ = std::move(images);
  return r;
}

std::optional<VPolytope> UpdateRule::image_y(const CredalSet& p, std::size_t x) const {
  if (x >= p.space().num_x()) throw InvalidArgumentError("x index out of range");
  try {
    switch (kind_) {
      case Kind::kStandard:
        return condition_y(p, {x});
      case Kind::kIgnore:
        return marginal_y(p);
      case Kind::kPartition:
        if (cells_->num_x() != p.space().num_x()) throw DimensionError("partition and credal set disagree on |X|");
        return condition_y(p, cells_->cell_of(x));
      case Kind::kTable:
        if (table_.size() != p.space().num_x()) throw DimensionError("update table needs one entry per x");
        return marginal_y(table_[x]);
    }
  } catch (const UndefinedConditionalError&) {
  }
  return std::nullopt;
}

std::string UpdateRule::describe(const ProblemSpace& space) const {
  switch (kind_) {
    case Kind::kStandard:
      return "standard";
    case Kind::kIgnore:
      return "ignore";
    case Kind::kTable:
      return "table";
    case Kind::kPartition: {
      std::string out = "partition:";
      for (std::size_t c = 0; c < cells_->cells().size(); ++c) {
        if (c > 0) out += "|";
        const auto& cell = cells_->cells()[c];
        for (std::size_t i = 0; i < cell.size(); ++i) {
          if (i > 0) out += ",";
          out += space.x_labels()[cell[i]];
        }
      }
      return out;
    }
  }
  return "?";
}

EquivalenceClasses equivalence_classes(const UpdateRule& rule, const CredalSet& p) {
  const std::size_t nx = p.space().num_x();
  std::vector<XSet> cells;
  std::vector<VPolytope> reps;
  XSet undefined;
  for (std::size_t x = 0; x < nx; ++x) {
    auto img = rule.image_y(p, x);
    if (!img) {
      undefined.push_back(x);
      continue;
    }
    bool placed = false;
    for (std::size_t c = 0; c < reps.size() && !placed; ++c) {
      if (set_equal(*img, reps[c])) {
        cells[c].push_back(x);
        placed = true;
      }
    }
    if (!placed) {
      cells.push_back({x});
      reps.push_back(std::move(*img));
    }
  }
  if (!undefined.empty()) cells.push_back(undefined);
  return {Partition(nx, std::move(cells)), std::move(undefined)};
}

namespace {

bool has_mass(const CredalSet& p, const XSet& event) {
  for (const auto& g : p.generators()) {
    if (g.prob(event) > 0) return true;
  }
  return false;
}

}  // namespace

CalibrationReport check_calibration(const UpdateRule& rule, const CredalSet& p) {
  CalibrationReport r{equivalence_classes(rule, p), {}, true, true};
  const auto& cells = r.classes.classes.cells();
  const std::size_t defined = cells.size() - (r.classes.undefined.empty() ? 0 : 1);
  for (std::size_t c = 0; c < defined; ++c) {
    ClassReport cr{cells[c], has_mass(p, cells[c]), std::nullopt, *rule.image_y(p, cells[c].front()), false, false};
    if (cr.tested) {
      cr.posterior = condition_y(p, cr.cell);
      cr.forward = subset(*cr.posterior, cr.image);
      cr.backward = subset(cr.image, *cr.posterior);
      r.calibrated = r.calibrated && cr.forward && cr.backward;
      r.semi_calibrated = r.semi_calibrated && cr.forward;
    }
    r.per_class.push_back(std::move(cr));
  }
  return r;
}

const char* to_string(Narrowness n) {
  switch (n) {
    case Narrowness::kStrictlyNarrower:
      return "strictly-narrower";
    case Narrowness::kNarrower:
      return "narrower";
    case Narrowness::kNotNarrower:
      return "not-narrower";
  }
  return "?";
}

Narrowness narrower(const UpdateRule& r1, const UpdateRule& r2, const CredalSet& p) {
  bool strict = false;
  for (auto x : support_x(p)) {
    const auto a = r1.image_y(p, x);
    const auto b = r2.image_y(p, x);
    if (!a || !b) throw UndefinedConditionalError("update rule undefined at x = " + p.space().x_labels()[x]);
    if (!subset(*a, *b)) return Narrowness::kNotNarrower;
    strict = strict || !subset(*b, *a);
  }
  return strict ? Narrowness::kStrictlyNarrower : Narrowness::kNarrower;
}

namespace {

void require_convex(const CredalSet& p, const char* what) {
  if (!p.convex()) {
    throw UnsupportedError(std::string(what) + " needs a convex credal set: the partition reduction relies on convexity");
  }
}

}  // namespace

Partition refine_partition(const Partition& c, const CredalSet& p) {
  require_convex(p, "refine_partition");
  return equivalence_classes(UpdateRule::partition(c), p).classes;
}

namespace {

void grow(std::size_t n, std::vector<std::size_t>& rgs, std::size_t blocks, std::vector<Partition>& out) {
  if (rgs.size() == n) {
    std::vector<XSet> cells(blocks);
    for (std::size_t x = 0; x < n; ++x) cells[rgs[x]].push_back(x);
    out.emplace_back(n, std::move(cells));
    return;
  }
  for (std::size_t b = 0; b <= blocks; ++b) {
    rgs.push_back(b);
    grow(n, rgs, std::max(blocks, b + 1), out);
    rgs.pop_back();
  }
}

using Mask = std::uint32_t;

Mask mask_of(const XSet& cell) {
  Mask m = 0;
  for (auto x : cell) m |= Mask{1} << x;
  return m;
}

XSet cell_of_mask(Mask m) {
  XSet out;
  for (std::size_t x = 0; m >> x; ++x) {
    if (m >> x & 1) out.push_back(x);
  }
  return out;
}

// Conditioning images per cell and inclusions between them, computed once.
class CellImages {
 public:
  explicit CellImages(const CredalSet& p) : p_(p) {}

  const std::optional<VPolytope>& image(Mask m) {
    auto it = images_.find(m);
    if (it == images_.end()) {
      std::optional<VPolytope> img;
      const XSet cell = cell_of_mask(m);
      if (has_mass(p_, cell)) img = condition_y(p_, cell);
      it = images_.emplace(m, std::move(img)).first;
    }
    return it->second;
  }

  // image(a) within image(b); both must be defined.
  bool within(Mask a, Mask b) {
    if (a == b) return true;
    const auto key = std::make_pair(a, b);
    auto it = incl_.find(key);
    if (it == incl_.end()) it = incl_.emplace(key, subset(*image(a), *image(b))).first;
    return it->second;
  }

 private:
  const CredalSet& p_;
  std::map<Mask, std::optional<VPolytope>> images_;
  std::map<std::pair<Mask, Mask>, bool> incl_;
};

void check_partition_guards(const CredalSet& p, const char* what) {
  require_convex(p, what);
  if (p.space().num_x() > kMaxPartitionX) {
    throw SizeLimitError(std::string(what) + ": |X| = " + std::to_string(p.space().num_x()) +
                         " exceeds the partition enumeration limit of 8");
  }
}

}  // namespace

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<std::size_t> rgs;
  grow(n, rgs, 0, out);
  return out;
}

SharpPartition sharp_partition(const CredalSet& p) {
  check_partition_guards(p, "sharp_partition");
  const std::size_t nx = p.space().num_x();
  const XSet plus = support_x(p);
  const auto parts = all_partitions(nx);
  CellImages cache(p);

  std::vector<std::vector<Mask>> masks(parts.size(), std::vector<Mask>(plus.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t k = 0; k < plus.size(); ++k) masks[i][k] = mask_of(parts[i].cell_of(plus[k]));
  }
  auto leq = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < plus.size(); ++k) {
      if (!cache.within(masks[i][k], masks[j][k])) return false;
    }
    return true;
  };

  std::vector<bool> is_min(parts.size(), true);
  SharpPartition out{Partition::whole(nx), {}, false};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size() && is_min[i]; ++j) {
      if (j != i && leq(j, i) && !leq(i, j)) is_min[i] = false;
    }
    if (is_min[i]) out.minimal.push_back(parts[i]);
  }

  Partition fix = Partition::singletons(nx);
  while (true) {
    Partition next = refine_partition(fix, p);
    if (next == fix) break;
    fix = std::move(next);
  }
  const auto fix_index = static_cast<std::size_t>(
      std::find(parts.begin(), parts.end(), fix) - parts.begin());
  if (is_min[fix_index]) {
    out.partition = fix;
  } else {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (is_min[j] && leq(j, fix_index)) {
        out.partition = parts[j];
        break;
      }
    }
  }
  out.calibrated = check_calibration(UpdateRule::partition(out.partition), p).calibrated;
  return out;
}

Sharpness is_sharply_calibrated(const UpdateRule& rule, const CredalSet& p) {
  check_partition_guards(p, "is_sharply_calibrated");
  Sharpness out;
  out.calibrated = check_calibration(rule, p).calibrated;
  if (!out.calibrated) return out;

  const std::size_t nx = p.space().num_x();
  const XSet plus = support_x(p);
  std::vector<VPolytope> rule_images;
  for (auto x : plus) {
    auto img = rule.image_y(p, x);
    if (!img) throw UndefinedConditionalError("update rule undefined at x = " + p.space().x_labels()[x]);
    rule_images.push_back(std::move(*img));
  }

  CellImages cache(p);
  std::map<std::pair<Mask, std::size_t>, std::pair<bool, bool>> cmp;  // (cell within rule, rule within cell)
  auto compare = [&](Mask m, std::size_t k) {
    const auto key = std::make_pair(m, k);
    auto it = cmp.find(key);
    if (it == cmp.end()) {
      const VPolytope& img = *cache.image(m);
      it = cmp.emplace(key, std::make_pair(subset(img, rule_images[k]), subset(rule_images[k], img))).first;
    }
    return it->second;
  };

  for (const auto& part : all_partitions(nx)) {
    bool within = true;
    bool strict = false;
    for (std::size_t k = 0; k < plus.size() && within; ++k) {
      const auto [fwd, back] = compare(mask_of(part.cell_of(plus[k])), k);
      within = fwd;
      strict = strict || !back;
    }
    if (!within || !strict) continue;
    if (check_calibration(UpdateRule::partition(part), p).calibrated) {
      out.witness = part;
      return out;
    }
  }
  out.sharp = true;
  return out;
}

}  // namespace credal
