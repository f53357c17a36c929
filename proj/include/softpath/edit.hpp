#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "softpath/errors.hpp"
#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace softpath {

inline constexpr double kWeldTolerance = 0.01;

// 1-based index list; an absent list and an empty list mean "all".
using IndexList = std::vector<int>;

SoftPath reverse(const SoftPath& p);
Component reverse(const Component& c);
SoftPath translate(const SoftPath& p, double dx, double dy);
SoftPath transform(const SoftPath& p, const Transform2D& t);
// Throws DegenerateSpan, EmptyPath.
SoftPath span(const SoftPath& p, Point from, Point to);

struct GapSpec {
  double amount = 0;
  std::optional<IndexList> indices;
};

SoftPath insert_gaps_components(const SoftPath& p, const GapSpec& g, Diagnostics* diag = nullptr);
SoftPath insert_gaps_segments(const SoftPath& p, const GapSpec& g, Diagnostics* diag = nullptr);

SoftPath join_components(const SoftPath& p, const IndexList& indices, Diagnostics* diag = nullptr);
SoftPath spot_weld(const SoftPath& p);
SoftPath remove_empty(const SoftPath& p);
SoftPath remove_components(const SoftPath& p, const IndexList& indices, Diagnostics* diag = nullptr);
SoftPath open(const SoftPath& p);

struct ClosePlain {};
struct CloseAdjust {};
struct CloseWith {
  SoftPath splice;
};
struct CloseWithCurve {};
using CloseMode = std::variant<ClosePlain, CloseAdjust, CloseWith, CloseWithCurve>;

// Closes the last component. Throws EmptyPath, DegenerateSpan.
SoftPath close(const SoftPath& p, const CloseMode& mode, Diagnostics* diag = nullptr);

SoftPath join_with(const SoftPath& p, const SoftPath& splice, const std::optional<IndexList>& indices,
                   bool upright, Diagnostics* diag = nullptr);
SoftPath join_with_curve(const SoftPath& p, const std::optional<IndexList>& indices,
                         Diagnostics* diag = nullptr);

// Throws DegenerateSpan, EmptyPath.
SoftPath splice(const SoftPath& initial, const SoftPath& middle, const SoftPath& final_path,
                Diagnostics* diag = nullptr);

// split_self -> gaps -> spot weld (unless draft) -> components.
std::vector<SoftPath> knot(const SoftPath& p, double gap, const std::optional<IndexList>& indices,
                           bool draft, Diagnostics* diag = nullptr);

}  // namespace softpath
