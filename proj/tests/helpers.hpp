#pragma once

#include <random>
#include <vector>

#include "flowrack/optimizer.hpp"
#include "flowrack/simulation.hpp"
#include "flowrack/types.hpp"

namespace flowrack::testing {

// Six-bin reference instance used by the golden tests: known optimum is 24
// cycles with cut depths (7,7,0,3,5,2) and a unique selection.
inline RackStateMatrix reference_rack() {
    return RackStateMatrix({6, 7, 10}, {
                                           {1, 2, 9, 8, 4, 6, 2},
                                           {8, 10, 4, 3, 4, 6, 10},
                                           {8, 6, 10, 3, 10, 10, 7},
                                           {1, 4, 10, 7, 7, 9, 10},
                                           {10, 2, 3, 4, 10, 7, 3},
                                           {3, 1, 5, 3, 7, 8, 8},
                                       });
}

inline RequestVector reference_request() {
    return RequestVector({3, 3, 0, 5, 0, 0, 0, 0, 0, 5});
}

inline std::vector<std::vector<int>> reference_selection() {
    return {
        {1, 1, 0, 0, 1, 0, 1},
        {0, 1, 1, 0, 1, 0, 1},
        {0, 0, 0, 0, 0, 0, 0},
        {1, 1, 1, 0, 0, 0, 0},
        {1, 1, 0, 1, 1, 0, 0},
        {0, 1, 0, 0, 0, 0, 0},
    };
}

inline std::vector<int> reference_cut_depths() { return {7, 7, 0, 3, 5, 2}; }

inline RetrievalPlan reference_plan() {
    RetrievalPlan plan;
    plan.cut_depths = reference_cut_depths();
    plan.selection = reference_selection();
    plan.objective = 24;
    plan.delivered = 16;
    plan.restored = 8;
    plan.delivery_rate = 16.0 / 24.0;
    return plan;
}

inline RackStateMatrix random_settled_rack(std::mt19937_64& rng, Dimensions dims) {
    RackStateMatrix rack(dims);
    for (int k = 1; k <= dims.bins; ++k) {
        const int fill = static_cast<int>(rng() % static_cast<std::uint64_t>(dims.slots_per_bin + 1));
        for (int j = 1; j <= fill; ++j) {
            rack.set(k, j, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dims.num_types)));
        }
    }
    return rack;
}

/// Request within stock for every type; may be all-zero.
inline RequestVector random_feasible_request(std::mt19937_64& rng, const RackStateMatrix& rack) {
    const auto stock = rack.stock_by_type();
    RequestVector request = RequestVector::zeros(rack.dims().num_types);
    for (int i = 1; i <= rack.dims().num_types; ++i) {
        const int available = stock[static_cast<size_t>(i)];
        if (available > 0) {
            request.set(i, static_cast<int>(rng() % static_cast<std::uint64_t>(available + 1)));
        }
    }
    return request;
}

inline Dimensions random_dims(std::mt19937_64& rng, int max_bins, int max_slots, int max_types) {
    return Dimensions{1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_bins)),
                      1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_slots)),
                      1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_types))};
}

}  // namespace flowrack::testing
