#pragma once

#include <span>
#include <vector>

#include "flowrack/types.hpp"

namespace flowrack {

using CustomerRequest = RequestVector;

struct TimedRequest {
    Tick tick = 0;
    CustomerRequest request;

    bool operator==(const TimedRequest&) const = default;
};

/// Elementwise sum of per-customer requests. An empty list yields the zero
/// vector; mixed lengths throw LengthMismatch.
RequestVector aggregate(std::span<const CustomerRequest> requests, int num_types);

/// Collects request arrivals and releases them as one batch per fixed period.
/// An arrival exactly on a period boundary belongs to the following batch.
class BatchClock {
public:
    BatchClock(Tick period, int num_types);

    Tick period() const { return period_; }

    void add(Tick tick, CustomerRequest request);

    /// Aggregate of every pending arrival strictly before `now` (the period
    /// that just elapsed), removed from the clock. `now` must be a
    /// non-negative multiple of the period.
    RequestVector release(Tick now);

    size_t pending_count() const { return pending_.size(); }

private:
    Tick period_;
    int num_types_;
    std::vector<TimedRequest> pending_;
};

}  // namespace flowrack
