#include "flowrack/simulation.hpp"

#include <algorithm>

namespace flowrack {

const char* to_string(PlacementPolicy p) {
    switch (p) {
        case PlacementPolicy::round_robin: return "round_robin";
        case PlacementPolicy::seeded_random: return "seeded_random";
    }
    return "?";
}

PlacementPolicy placement_policy_from_string(const std::string& name) {
    if (name == "round_robin") return PlacementPolicy::round_robin;
    if (name == "seeded_random") return PlacementPolicy::seeded_random;
    throw ParseError("unknown placement policy '" + name + "'");
}

void Scenario::validate() const {
    dims.validate();
    if (initial.dims() != dims) {
        throw ValidationError("initial rack dimensions do not match the scenario dimensions");
    }
    if (!initial.settled()) {
        throw ValidationError("initial rack is not settled");
    }
    if (batch_period < 1) throw ValidationError("batch period must be at least one tick");
    Tick last = 0;
    for (const auto& [tick, request] : request_stream) {
        if (tick < 0) throw ValidationError("request ticks must be non-negative");
        if (tick < last) throw ValidationError("request stream is not sorted by tick");
        if (request.num_types() != dims.num_types) {
            throw ValidationError("a customer request does not have one quantity per type");
        }
        last = tick;
    }
    last = 0;
    for (const auto& [tick, type] : storage_stream) {
        if (tick < 0) throw ValidationError("storage ticks must be non-negative");
        if (tick < last) throw ValidationError("storage stream is not sorted by tick");
        if (type < 1 || type > dims.num_types) {
            throw ValidationError("storage arrival of unknown product type " +
                                  std::to_string(type));
        }
        last = tick;
    }
}

Marking replay_trace(Marking initial, const EventTrace& trace) {
    for (const auto& event : trace) {
        switch (event.kind) {
            case Transition::store: initial.store(event.type, event.bin); break;
            case Transition::reinsert: initial.reinsert(event.type, event.bin); break;
            case Transition::deliver: {
                const int type = initial.deliver(event.bin);
                if (type != event.type) {
                    throw ValidationError("trace replay: delivered type " + std::to_string(type) +
                                          " where the trace recorded " + std::to_string(event.type));
                }
                break;
            }
            case Transition::recycle: {
                const int type = initial.recycle(event.bin);
                if (type != event.type) {
                    throw ValidationError("trace replay: recycled type " + std::to_string(type) +
                                          " where the trace recorded " + std::to_string(event.type));
                }
                break;
            }
            case Transition::shift:
                throw ValidationError("trace replay: shift firings are implicit and never recorded");
        }
        if (initial.occupied_count() != event.rack_count ||
            initial.conveyor_total() != event.conveyor_count ||
            initial.delivered_total() != event.delivered_count) {
            throw ValidationError("trace replay: marking totals diverge at tick " +
                                  std::to_string(event.tick));
        }
    }
    return initial;
}

Simulator::Simulator(Scenario scenario)
    : scenario_(std::move(scenario)),
      marking_(Dimensions{1, 1, 1}),
      rng_storage_(scenario_.seed ^ 0x9e3779b97f4a7c15ULL),
      rng_restore_(scenario_.seed ^ 0xd1b54a32d192ed03ULL) {
    scenario_.validate();
    marking_ = Marking::from_matrix(scenario_.initial);
}

void Simulator::record(Transition kind, int type, int bin) {
    trace_.push_back({now_, kind, type, bin, marking_.occupied_count(), marking_.conveyor_total(),
                      marking_.delivered_total()});
}

int Simulator::pick_bin_with_free_back(PlacementPolicy policy, std::mt19937_64& rng,
                                       int& rr_cursor) {
    std::vector<int> open;
    open.reserve(static_cast<size_t>(scenario_.dims.bins));
    for (int k = 1; k <= scenario_.dims.bins; ++k) {
        if (!marking_.bin_full(k)) open.push_back(k);
    }
    if (open.empty()) return 0;
    if (policy == PlacementPolicy::seeded_random) {
        // rng() % n keeps bin choice identical across platforms.
        return open[static_cast<size_t>(rng() % open.size())];
    }
    for (int step = 0; step < scenario_.dims.bins; ++step) {
        const int k = 1 + (rr_cursor + step) % scenario_.dims.bins;
        if (!marking_.bin_full(k)) {
            rr_cursor = k % scenario_.dims.bins;
            return k;
        }
    }
    return 0;
}

void Simulator::drain_conveyor() {
    while (marking_.conveyor_total() > 0) {
        const int bin = pick_bin_with_free_back(scenario_.restore_policy, rng_restore_,
                                                rr_restore_cursor_);
        if (bin == 0) break;  // rack full: leftovers wait for the next drain
        int type = 0;
        for (int i = 1; i <= scenario_.dims.num_types; ++i) {
            if (marking_.conveyor_count(i) > 0) {
                type = i;
                break;
            }
        }
        marking_.reinsert(type, bin);
        record(Transition::reinsert, type, bin);
    }
}

BatchReport Simulator::run_batch_cycle(const RequestVector& batch) {
    BatchReport report;
    report.batch_id = next_batch_id_;
    report.tick = now_;
    report.request = batch;

    const RackStateMatrix snapshot = marking_.to_matrix();
    const RetrievalPlan plan = solve(snapshot, batch);  // InfeasibleRequest propagates

    ++next_batch_id_;
    for (int k = 1; k <= scenario_.dims.bins; ++k) {
        const int depth = plan.cut_depth(k);
        for (int j = 1; j <= depth; ++j) {
            // After j-1 front evacuations the item originally at slot j is at
            // the retrieval face.
            if (plan.selected(k, j)) {
                const int type = marking_.deliver(k);
                record(Transition::deliver, type, k);
            } else {
                const int type = marking_.recycle(k);
                record(Transition::recycle, type, k);
            }
        }
    }
    drain_conveyor();

    report.fulfilled = true;
    report.objective = plan.objective;
    report.cut_depths = plan.cut_depths;
    report.delivered = plan.delivered;
    report.restored = plan.restored;
    report.delivery_rate = plan.delivery_rate;
    return report;
}

int Simulator::process_storage(const std::vector<int>& arrival_types) {
    for (int type : arrival_types) {
        if (type < 1 || type > scenario_.dims.num_types) {
            throw ValidationError("storage arrival of unknown product type " +
                                  std::to_string(type));
        }
        storage_queue_.push_back(type);
    }
    int stored = 0;
    while (!storage_queue_.empty()) {
        const int bin = pick_bin_with_free_back(scenario_.storage_policy, rng_storage_,
                                                rr_storage_cursor_);
        if (bin == 0) break;
        const int type = storage_queue_.front();
        storage_queue_.pop_front();
        marking_.store(type, bin);
        record(Transition::store, type, bin);
        ++stored;
    }
    return stored;
}

SimulationResult Simulator::run() {
    Tick horizon = 0;
    for (const auto& [tick, request] : scenario_.request_stream) horizon = std::max(horizon, tick);
    for (const auto& [tick, type] : scenario_.storage_stream) horizon = std::max(horizon, tick);

    Tick end_tick = 0;
    if (!scenario_.request_stream.empty() || !scenario_.storage_stream.empty()) {
        end_tick = ((horizon / scenario_.batch_period) + 1) * scenario_.batch_period;
    }

    BatchClock clock(scenario_.batch_period, scenario_.dims.num_types);
    RequestVector carryover = RequestVector::zeros(scenario_.dims.num_types);

    std::vector<BatchReport> reports;
    size_t next_request = 0;
    size_t next_arrival = 0;

    for (now_ = 0; now_ <= end_tick; ++now_) {
        while (next_request < scenario_.request_stream.size() &&
               scenario_.request_stream[next_request].tick == now_) {
            clock.add(now_, scenario_.request_stream[next_request].request);
            ++next_request;
        }

        if (now_ > 0 && now_ % scenario_.batch_period == 0) {
            const RequestVector batch = carryover + clock.release(now_);
            carryover = RequestVector::zeros(scenario_.dims.num_types);
            if (!batch.zero()) {
                try {
                    reports.push_back(run_batch_cycle(batch));
                } catch (const InfeasibleRequest& infeasible) {
                    BatchReport deferred;
                    deferred.batch_id = next_batch_id_++;
                    deferred.tick = now_;
                    deferred.request = batch;
                    deferred.fulfilled = false;
                    deferred.shortfall = infeasible.shortfall;
                    reports.push_back(std::move(deferred));
                    carryover = batch;  // whole batch waits for the next period
                }
            }
        }

        std::vector<int> arrivals;
        while (next_arrival < scenario_.storage_stream.size() &&
               scenario_.storage_stream[next_arrival].tick == now_) {
            arrivals.push_back(scenario_.storage_stream[next_arrival].type);
            ++next_arrival;
        }
        process_storage(arrivals);
    }

    SimulationResult result{marking_, std::move(reports), trace_, storage_queued()};
    return result;
}

}  // namespace flowrack
