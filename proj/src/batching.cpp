#include "flowrack/batching.hpp"

#include <algorithm>

namespace flowrack {

RequestVector aggregate(std::span<const CustomerRequest> requests, int num_types) {
    RequestVector sum = RequestVector::zeros(num_types);
    for (const auto& request : requests) {
        if (request.num_types() != num_types) {
            throw LengthMismatch("customer request has " + std::to_string(request.num_types()) +
                                 " types, expected " + std::to_string(num_types));
        }
        sum = sum + request;
    }
    return sum;
}

BatchClock::BatchClock(Tick period, int num_types) : period_(period), num_types_(num_types) {
    if (period < 1) throw ValidationError("batch period must be at least one tick");
    if (num_types < 1) throw ValidationError("batch clock needs at least one product type");
}

void BatchClock::add(Tick tick, CustomerRequest request) {
    if (tick < 0) throw ValidationError("arrival ticks must be non-negative");
    if (request.num_types() != num_types_) {
        throw LengthMismatch("customer request has " + std::to_string(request.num_types()) +
                             " types, expected " + std::to_string(num_types_));
    }
    pending_.push_back({tick, std::move(request)});
}

RequestVector BatchClock::release(Tick now) {
    if (now < 0 || now % period_ != 0) {
        throw ValidationError("release tick " + std::to_string(now) +
                              " is not a period boundary (period " + std::to_string(period_) + ")");
    }
    RequestVector batch = RequestVector::zeros(num_types_);
    auto due = std::stable_partition(pending_.begin(), pending_.end(),
                                     [now](const TimedRequest& r) { return r.tick >= now; });
    for (auto it = due; it != pending_.end(); ++it) batch = batch + it->request;
    pending_.erase(due, pending_.end());
    return batch;
}

}  // namespace flowrack
