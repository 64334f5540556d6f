#include "flowrack/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace flowrack {

namespace {

std::string shortfall_message(const ShortfallReport& report) {
    std::ostringstream out;
    out << "request exceeds rack stock:";
    for (const auto& s : report) {
        out << " type " << s.type << " requested " << s.requested << " available " << s.available
            << ";";
    }
    return out.str();
}

void finalize(RetrievalPlan& plan, const RequestVector& request) {
    plan.objective = std::accumulate(plan.cut_depths.begin(), plan.cut_depths.end(), 0L);
    plan.delivered = request.total();
    plan.restored = static_cast<int>(plan.objective) - plan.delivered;
    plan.delivery_rate =
        plan.objective > 0 ? static_cast<double>(plan.delivered) / static_cast<double>(plan.objective)
                           : 1.0;
}

void check_solver_inputs(const RackStateMatrix& rack, const RequestVector& request) {
    rack.dims().validate();
    if (!rack.settled()) {
        throw ValidationError("rack snapshot is not settled; items must be packed to the front");
    }
    if (request.num_types() != rack.dims().num_types) {
        throw LengthMismatch("request has " + std::to_string(request.num_types()) +
                             " types, rack has " + std::to_string(rack.dims().num_types));
    }
}

/// Selection reconstruction shared contract: for each type, take the
/// shallowest matching slots within the cut depths, lowest bin first among
/// slots of equal depth.
std::vector<std::vector<int>> greedy_selection(const std::vector<std::vector<int>>& grid,
                                               const RequestVector& request,
                                               const std::vector<int>& depths) {
    const int m = static_cast<int>(grid.size());
    const int q = m > 0 ? static_cast<int>(grid[0].size()) : 0;
    std::vector<std::vector<int>> selection(static_cast<size_t>(m),
                                            std::vector<int>(static_cast<size_t>(q), 0));
    for (int type = 1; type <= request.num_types(); ++type) {
        int need = request.at(type);
        for (int j = 1; j <= q && need > 0; ++j) {
            for (int k = 0; k < m && need > 0; ++k) {
                if (j <= depths[static_cast<size_t>(k)] &&
                    grid[static_cast<size_t>(k)][static_cast<size_t>(j - 1)] == type) {
                    selection[static_cast<size_t>(k)][static_cast<size_t>(j - 1)] = 1;
                    --need;
                }
            }
        }
        if (need > 0) throw Error("internal: selection reconstruction ran out of stock");
    }
    return selection;
}

void check_canonical(const std::vector<std::vector<int>>& selection,
                     const std::vector<int>& depths) {
    for (size_t k = 0; k < depths.size(); ++k) {
        int deepest = 0;
        for (size_t j = 0; j < selection[k].size(); ++j)
            if (selection[k][j] != 0) deepest = static_cast<int>(j) + 1;
        if (deepest != depths[k]) {
            throw Error("internal: cut depth of bin " + std::to_string(k + 1) +
                        " does not match its deepest selection");
        }
    }
}

// Depth-first search over per-bin cut depths, bins in index order so complete
// vectors are visited in ascending lexicographic order: with strict
// improvement only, the recorded optimum is the lexicographically smallest.
class DepthSearch {
public:
    DepthSearch(const std::vector<std::vector<int>>& grid, const RequestVector& request)
        : grid_(grid),
          m_(static_cast<int>(grid.size())),
          q_(static_cast<int>(grid[0].size())),
          n_(request.num_types()),
          demand_(request.quantities()),
          covered_(static_cast<size_t>(n_) + 1, 0),
          current_(static_cast<size_t>(m_), 0) {
        fill_.reserve(static_cast<size_t>(m_));
        for (const auto& row : grid_) {
            int fill = 0;
            while (fill < q_ && row[static_cast<size_t>(fill)] != 0) ++fill;
            fill_.push_back(fill);
        }
        build_suffix_tables();
        best_cost_ = std::accumulate(fill_.begin(), fill_.end(), 0L) + 1;
    }

    std::vector<int> run() {
        dfs(0, 0);
        if (best_.empty()) throw Error("internal: depth search found no solution");
        return best_;
    }

private:
    int demand(int type) const { return demand_[static_cast<size_t>(type - 1)]; }
    int type_of(int k, int j) const {
        return grid_[static_cast<size_t>(k)][static_cast<size_t>(j - 1)];
    }
    int suffix_stock(int k, int type) const {
        return suffix_stock_[static_cast<size_t>(k * (n_ + 1) + type)];
    }
    int suffix_min_depth(int k, int type) const {
        return suffix_min_depth_[static_cast<size_t>(k * (n_ + 1) + type)];
    }

    void build_suffix_tables() {
        constexpr int kNoStock = std::numeric_limits<int>::max() / 4;
        suffix_stock_.assign(static_cast<size_t>((m_ + 1) * (n_ + 1)), 0);
        suffix_min_depth_.assign(static_cast<size_t>((m_ + 1) * (n_ + 1)), kNoStock);
        for (int k = m_ - 1; k >= 0; --k) {
            for (int i = 1; i <= n_; ++i) {
                int count = 0;
                int shallowest = kNoStock;
                for (int j = 1; j <= fill_[static_cast<size_t>(k)]; ++j) {
                    if (type_of(k, j) == i) {
                        ++count;
                        if (shallowest == kNoStock) shallowest = j;
                    }
                }
                suffix_stock_[static_cast<size_t>(k * (n_ + 1) + i)] =
                    suffix_stock(k + 1, i) + count;
                suffix_min_depth_[static_cast<size_t>(k * (n_ + 1) + i)] =
                    std::min(shallowest, suffix_min_depth(k + 1, i));
            }
        }
    }

    void dfs(int k, long cost) {
        long residual_total = 0;
        long bound_extra = 0;
        for (int i = 1; i <= n_; ++i) {
            const int residual = demand(i) - covered_[static_cast<size_t>(i)];
            if (residual <= 0) continue;
            if (residual > suffix_stock(k, i)) return;  // cannot complete from here
            residual_total += residual;
            bound_extra = std::max<long>(bound_extra, suffix_min_depth(k, i));
        }
        if (residual_total == 0) {
            // Zero-depth tail is the cheapest and lexicographically smallest completion.
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_ = current_;
                std::fill(best_.begin() + k, best_.end(), 0);
            }
            return;
        }
        if (cost + std::max(residual_total, bound_extra) >= best_cost_) return;

        current_[static_cast<size_t>(k)] = 0;
        dfs(k + 1, cost);

        // Deeper cuts, skipping depths whose deepest item adds nothing to the
        // still-uncovered demand (such a cut is never part of an optimum).
        int advanced = 0;
        for (int j = 1; j <= fill_[static_cast<size_t>(k)]; ++j) {
            if (cost + j >= best_cost_) break;
            const int i = type_of(k, j);
            const bool useful = covered_[static_cast<size_t>(i)] < demand(i);
            ++covered_[static_cast<size_t>(i)];
            ++advanced;
            if (useful) {
                current_[static_cast<size_t>(k)] = j;
                dfs(k + 1, cost + j);
            }
        }
        for (int j = 1; j <= advanced; ++j) --covered_[static_cast<size_t>(type_of(k, j))];
        current_[static_cast<size_t>(k)] = 0;
    }

    const std::vector<std::vector<int>>& grid_;
    int m_, q_, n_;
    std::vector<int> demand_;
    std::vector<int> fill_;
    std::vector<int> suffix_stock_;      // (m+1) x (n+1)
    std::vector<int> suffix_min_depth_;  // (m+1) x (n+1)
    std::vector<int> covered_;
    std::vector<int> current_;
    std::vector<int> best_;
    long best_cost_;
};

}  // namespace

InfeasibleRequest::InfeasibleRequest(ShortfallReport report)
    : Error(shortfall_message(report)), shortfall(std::move(report)) {}

ShortfallReport stock_shortfall(const RackStateMatrix& rack, const RequestVector& request) {
    if (request.num_types() != rack.dims().num_types) {
        throw LengthMismatch("request has " + std::to_string(request.num_types()) +
                             " types, rack has " + std::to_string(rack.dims().num_types));
    }
    const std::vector<int> stock = rack.stock_by_type();
    ShortfallReport report;
    for (int i = 1; i <= request.num_types(); ++i) {
        if (request.at(i) > stock[static_cast<size_t>(i)]) {
            report.push_back({i, request.at(i), stock[static_cast<size_t>(i)]});
        }
    }
    return report;
}

RetrievalPlan solve(const RackStateMatrix& rack, const RequestVector& request) {
    check_solver_inputs(rack, request);
    if (auto report = stock_shortfall(rack, request); !report.empty()) {
        throw InfeasibleRequest(std::move(report));
    }

    const auto grid = rack.rows();
    DepthSearch search(grid, request);

    RetrievalPlan plan;
    plan.cut_depths = search.run();
    plan.selection = greedy_selection(grid, request, plan.cut_depths);
    check_canonical(plan.selection, plan.cut_depths);
    finalize(plan, request);
    return plan;
}

EnumerationResult solve_bruteforce(const RackStateMatrix& rack, const RequestVector& request,
                                   std::uint64_t budget) {
    check_solver_inputs(rack, request);
    if (auto report = stock_shortfall(rack, request); !report.empty()) {
        throw InfeasibleRequest(std::move(report));
    }

    const int m = rack.dims().bins;
    const int q = rack.dims().slots_per_bin;
    const int n = rack.dims().num_types;

    std::uint64_t total = 1;
    for (int k = 0; k < m; ++k) {
        if (total > budget / static_cast<std::uint64_t>(q + 1)) {
            throw BudgetExceeded("enumeration needs more than " + std::to_string(budget) +
                                 " cut-depth vectors");
        }
        total *= static_cast<std::uint64_t>(q + 1);
    }

    // Per-bin prefix counts: items of each type at slots <= d.
    const auto grid = rack.rows();
    std::vector<int> prefix(static_cast<size_t>(m * (q + 1) * (n + 1)), 0);
    auto prefix_count = [&](int k, int d, int i) {
        return prefix[static_cast<size_t>((k * (q + 1) + d) * (n + 1) + i)];
    };
    for (int k = 0; k < m; ++k) {
        for (int d = 1; d <= q; ++d) {
            for (int i = 1; i <= n; ++i) {
                prefix[static_cast<size_t>((k * (q + 1) + d) * (n + 1) + i)] =
                    prefix_count(k, d - 1, i) +
                    (grid[static_cast<size_t>(k)][static_cast<size_t>(d - 1)] == i ? 1 : 0);
            }
        }
    }

    std::vector<int> depths(static_cast<size_t>(m), 0);
    std::vector<int> best_depths;
    long best_cost = std::numeric_limits<long>::max();
    std::uint64_t enumerated = 0;

    // Odometer over [0,q]^m, last bin fastest: ascending lexicographic order,
    // so with strict improvement the kept optimum is the lex-smallest.
    while (true) {
        ++enumerated;
        bool feasible = true;
        for (int i = 1; i <= n && feasible; ++i) {
            int avail = 0;
            for (int k = 0; k < m; ++k) avail += prefix_count(k, depths[static_cast<size_t>(k)], i);
            feasible = avail >= request.at(i);
        }
        if (feasible) {
            const long cost = std::accumulate(depths.begin(), depths.end(), 0L);
            if (cost < best_cost) {
                best_cost = cost;
                best_depths = depths;
            }
        }
        int pos = m - 1;
        while (pos >= 0 && depths[static_cast<size_t>(pos)] == q) {
            depths[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++depths[static_cast<size_t>(pos)];
    }

    if (best_depths.empty() && best_cost == std::numeric_limits<long>::max()) {
        throw Error("internal: enumeration found no feasible vector after stock check");
    }

    EnumerationResult result;
    result.vectors_enumerated = enumerated;
    result.plan.cut_depths = best_depths;
    // Independent reconstruction: shallowest matching slots, lowest bin first.
    result.plan.selection.assign(static_cast<size_t>(m),
                                 std::vector<int>(static_cast<size_t>(q), 0));
    for (int i = 1; i <= n; ++i) {
        int need = request.at(i);
        for (int j = 1; j <= q && need > 0; ++j) {
            for (int k = 0; k < m && need > 0; ++k) {
                if (j <= best_depths[static_cast<size_t>(k)] &&
                    grid[static_cast<size_t>(k)][static_cast<size_t>(j - 1)] == i) {
                    result.plan.selection[static_cast<size_t>(k)][static_cast<size_t>(j - 1)] = 1;
                    --need;
                }
            }
        }
    }
    check_canonical(result.plan.selection, result.plan.cut_depths);
    finalize(result.plan, request);
    return result;
}

namespace rules {
const std::vector<std::string>& all() {
    static const std::vector<std::string> names = {
        single_depth_per_bin, depth_in_range,         depth_on_stock,    selection_binary,
        selection_on_stock,   selection_within_depth, request_satisfied,
    };
    return names;
}
}  // namespace rules

PlanEvaluation evaluate_plan(const RackStateMatrix& rack, const RequestVector& request,
                             const RetrievalPlan& plan) {
    const int m = rack.dims().bins;
    const int q = rack.dims().slots_per_bin;
    const int n = rack.dims().num_types;

    if (static_cast<int>(plan.cut_depths.size()) != m) {
        throw DimensionMismatch("plan has " + std::to_string(plan.cut_depths.size()) +
                                " cut depths, rack has " + std::to_string(m) + " bins");
    }
    if (static_cast<int>(plan.selection.size()) != m) {
        throw DimensionMismatch("plan selection has " + std::to_string(plan.selection.size()) +
                                " rows, rack has " + std::to_string(m) + " bins");
    }
    for (const auto& row : plan.selection) {
        if (static_cast<int>(row.size()) != q) {
            throw DimensionMismatch("plan selection row has " + std::to_string(row.size()) +
                                    " slots, rack has " + std::to_string(q));
        }
    }
    if (request.num_types() != n) {
        throw LengthMismatch("request has " + std::to_string(request.num_types()) +
                             " types, rack has " + std::to_string(n));
    }

    PlanEvaluation eval;
    auto& violations = eval.violations;

    // The cut-depth vector representation marks at most one depth per bin, so
    // the single-depth rule cannot be violated here.
    for (int k = 1; k <= m; ++k) {
        const int d = plan.cut_depth(k);
        if (d < 0 || d > q) {
            violations.push_back({rules::depth_in_range, k, 0, 0,
                                  "cut depth " + std::to_string(d) + " outside [0," +
                                      std::to_string(q) + "]"});
        } else if (d > 0 && rack.at(k, d) == 0) {
            violations.push_back({rules::depth_on_stock, k, d, 0,
                                  "cut depth marks an empty slot"});
        }
    }

    std::vector<int> selected_per_type(static_cast<size_t>(n) + 1, 0);
    for (int k = 1; k <= m; ++k) {
        const int d = plan.cut_depth(k);
        for (int j = 1; j <= q; ++j) {
            const int x = plan.selection[static_cast<size_t>(k - 1)][static_cast<size_t>(j - 1)];
            if (x != 0 && x != 1) {
                violations.push_back({rules::selection_binary, k, j, 0,
                                      "selection entry " + std::to_string(x) + " is not 0/1"});
                continue;
            }
            if (x == 0) continue;
            const int type = rack.at(k, j);
            if (type == 0) {
                violations.push_back({rules::selection_on_stock, k, j, 0,
                                      "selected slot is empty"});
            } else {
                ++selected_per_type[static_cast<size_t>(type)];
            }
            if (j > d) {
                violations.push_back({rules::selection_within_depth, k, j, 0,
                                      "selected slot lies beyond the bin's cut depth " +
                                          std::to_string(d)});
            }
        }
    }

    for (int i = 1; i <= n; ++i) {
        if (selected_per_type[static_cast<size_t>(i)] != request.at(i)) {
            violations.push_back(
                {rules::request_satisfied, 0, 0, i,
                 "type " + std::to_string(i) + " selects " +
                     std::to_string(selected_per_type[static_cast<size_t>(i)]) + " of " +
                     std::to_string(request.at(i)) + " requested"});
        }
    }

    eval.objective = std::accumulate(plan.cut_depths.begin(), plan.cut_depths.end(), 0L);
    eval.delivered = request.total();
    eval.restored = static_cast<int>(eval.objective) - eval.delivered;
    eval.delivery_rate = eval.objective > 0 ? static_cast<double>(eval.delivered) /
                                                  static_cast<double>(eval.objective)
                                            : 1.0;
    return eval;
}

std::vector<int> cycles_per_bin(const RetrievalPlan& plan) { return plan.cut_depths; }

std::map<int, std::vector<LocationRef>> selected_locations_by_type(const RetrievalPlan& plan,
                                                                   const RackStateMatrix& rack) {
    std::map<int, std::vector<LocationRef>> by_type;
    for (int k = 1; k <= rack.dims().bins; ++k) {
        for (int j = 1; j <= rack.dims().slots_per_bin; ++j) {
            if (!plan.selected(k, j)) continue;
            const int type = rack.at(k, j);
            if (type != 0) by_type[type].push_back({k, j});
        }
    }
    return by_type;
}

}  // namespace flowrack
