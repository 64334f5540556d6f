#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flowrack/types.hpp"

namespace flowrack {

struct Shortfall {
    int type = 0;
    int requested = 0;
    int available = 0;

    bool operator==(const Shortfall&) const = default;
};

/// One entry per product type whose requested quantity exceeds the rack stock.
using ShortfallReport = std::vector<Shortfall>;

struct InfeasibleRequest : Error {
    explicit InfeasibleRequest(ShortfallReport report);
    ShortfallReport shortfall;
};

/// A retrieval plan over a settled rack snapshot.
///
/// `cut_depths[k-1]` is the number of front evacuations bin k performs (its
/// cycle count); the selection matrix marks which evacuated items go to the
/// drop-off station, the rest return via the restoring conveyor. Plans
/// produced by the solvers are canonical: each bin's cut depth equals its
/// deepest selected slot.
struct RetrievalPlan {
    std::vector<int> cut_depths;              // length m, values in [0, q]
    std::vector<std::vector<int>> selection;  // m rows of q entries, 0/1
    long objective = 0;                       // sum of cut depths
    int delivered = 0;
    int restored = 0;                         // objective - delivered
    double delivery_rate = 1.0;               // delivered / objective; 1.0 when objective == 0

    int cut_depth(int bin) const { return cut_depths.at(static_cast<size_t>(bin - 1)); }
    bool selected(int bin, int slot) const {
        return selection.at(static_cast<size_t>(bin - 1)).at(static_cast<size_t>(slot - 1)) != 0;
    }

    bool operator==(const RetrievalPlan&) const = default;
};

/// Empty when every requested quantity is available in the rack.
ShortfallReport stock_shortfall(const RackStateMatrix& rack, const RequestVector& request);

/// Exact minimum-cycle plan: branch-and-bound over per-bin cut depths.
///
/// Ties between optimal solutions break towards the lexicographically
/// smallest cut-depth vector; within it the selection takes the shallowest
/// matching slots (lowest bin first among equals). Throws InfeasibleRequest
/// when some type's stock is short.
RetrievalPlan solve(const RackStateMatrix& rack, const RequestVector& request);

inline constexpr std::uint64_t default_enumeration_budget = 1u << 20;

struct EnumerationResult {
    RetrievalPlan plan;
    std::uint64_t vectors_enumerated = 0;
};

/// Reference solver: exhaustively enumerates every cut-depth vector in
/// [0,q]^m and keeps the feasible minimum, with the same tie-breaking as
/// solve(). Throws BudgetExceeded when (q+1)^m > budget.
EnumerationResult solve_bruteforce(const RackStateMatrix& rack, const RequestVector& request,
                                   std::uint64_t budget = default_enumeration_budget);

// ---------------------------------------------------------------------------
// Plan validation
// ---------------------------------------------------------------------------

namespace rules {
inline constexpr const char* single_depth_per_bin = "single-depth-per-bin";
inline constexpr const char* depth_in_range = "depth-in-range";
inline constexpr const char* depth_on_stock = "depth-on-stock";
inline constexpr const char* selection_binary = "selection-binary";
inline constexpr const char* selection_on_stock = "selection-on-stock";
inline constexpr const char* selection_within_depth = "selection-within-depth";
inline constexpr const char* request_satisfied = "request-satisfied";

/// All rule names, in report order.
const std::vector<std::string>& all();
}  // namespace rules

struct ConstraintViolation {
    std::string rule;
    int bin = 0;   // 0 when not location-specific
    int slot = 0;  // 0 when not slot-specific
    int type = 0;  // 0 when not type-specific
    std::string detail;

    bool operator==(const ConstraintViolation&) const = default;
};

struct PlanEvaluation {
    long objective = 0;
    int delivered = 0;
    int restored = 0;
    double delivery_rate = 1.0;
    std::vector<ConstraintViolation> violations;

    bool valid() const { return violations.empty(); }
};

/// Recomputes the plan's cost arithmetic and checks every plan rule,
/// reporting violations instead of failing. Throws DimensionMismatch only
/// when the plan's shape does not match the rack.
PlanEvaluation evaluate_plan(const RackStateMatrix& rack, const RequestVector& request,
                             const RetrievalPlan& plan);

/// Retrieval cycles per bin; equals the cut-depth vector.
std::vector<int> cycles_per_bin(const RetrievalPlan& plan);

/// Selected locations grouped by product type, in (bin, slot) order. Types
/// with no selected location are absent.
std::map<int, std::vector<LocationRef>> selected_locations_by_type(const RetrievalPlan& plan,
                                                                   const RackStateMatrix& rack);

}  // namespace flowrack
