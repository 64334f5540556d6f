#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "flowrack/batching.hpp"
#include "flowrack/marking.hpp"
#include "flowrack/optimizer.hpp"
#include "flowrack/types.hpp"

namespace flowrack {

/// How a bin is chosen when a product enters the storage face.
enum class PlacementPolicy { round_robin, seeded_random };

const char* to_string(PlacementPolicy p);
PlacementPolicy placement_policy_from_string(const std::string& name);

struct TimedArrival {
    Tick tick = 0;
    int type = 0;

    bool operator==(const TimedArrival&) const = default;
};

struct Scenario {
    Dimensions dims;
    RackStateMatrix initial;
    std::vector<TimedRequest> request_stream;  // sorted by tick
    std::vector<TimedArrival> storage_stream;  // sorted by tick, first-come-first-served
    Tick batch_period = 1;
    PlacementPolicy restore_policy = PlacementPolicy::seeded_random;
    PlacementPolicy storage_policy = PlacementPolicy::seeded_random;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One fired transition with the marking totals right after it. A trace
/// applied to the scenario's initial marking reproduces the final marking.
struct TraceEvent {
    Tick tick = 0;
    Transition kind = Transition::store;
    int type = 0;
    int bin = 0;
    int rack_count = 0;
    int conveyor_count = 0;
    int delivered_count = 0;

    bool operator==(const TraceEvent&) const = default;
};

using EventTrace = std::vector<TraceEvent>;

/// Re-applies a trace and checks each recorded firing against the evolving
/// marking; throws ValidationError on any disagreement.
Marking replay_trace(Marking initial, const EventTrace& trace);

struct BatchReport {
    int batch_id = 0;
    Tick tick = 0;
    RequestVector request;
    bool fulfilled = false;
    ShortfallReport shortfall;  // set when the batch was deferred
    long objective = 0;
    std::vector<int> cut_depths;
    int delivered = 0;
    int restored = 0;
    double delivery_rate = 1.0;

    bool operator==(const BatchReport&) const = default;
};

struct SimulationResult {
    Marking final_marking;
    std::vector<BatchReport> reports;
    EventTrace trace;
    int storage_queued = 0;  // arrivals still waiting for a free storage slot
};

/// Closed control loop over one rack:
///
///   release batch -> snapshot the marking -> solve -> evacuate bin by bin
///   (deliver selected items, recycle the rest) -> drain the restoring
///   conveyor back into the rack -> store queued arrivals.
///
/// A batch whose demand exceeds the rack stock is deferred whole and merged
/// with the next period's batch. All randomness comes from the scenario seed,
/// so equal scenarios give identical traces and reports.
class Simulator {
public:
    explicit Simulator(Scenario scenario);

    /// Runs the whole scenario: ticks advance from 0 through the last period
    /// boundary covering every stream event.
    SimulationResult run();

    /// One feedback cycle against the current marking. Throws
    /// InfeasibleRequest (before any firing) when stock is short.
    BatchReport run_batch_cycle(const RequestVector& batch);

    /// Queue the given arrivals, then store queued items first-come-
    /// first-served while some bin has a free storage slot. Returns the
    /// number of items stored.
    int process_storage(const std::vector<int>& arrival_types);

    const Marking& marking() const { return marking_; }
    const EventTrace& trace() const { return trace_; }
    int storage_queued() const { return static_cast<int>(storage_queue_.size()); }

private:
    void record(Transition kind, int type, int bin);
    void drain_conveyor();
    int pick_bin_with_free_back(PlacementPolicy policy, std::mt19937_64& rng, int& rr_cursor);

    Scenario scenario_;
    Marking marking_;
    EventTrace trace_;
    Tick now_ = 0;
    int next_batch_id_ = 1;
    std::deque<int> storage_queue_;
    std::mt19937_64 rng_storage_;
    std::mt19937_64 rng_restore_;
    int rr_storage_cursor_ = 0;
    int rr_restore_cursor_ = 0;
};

}  // namespace flowrack
