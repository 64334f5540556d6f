#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowrack {

using Tick = long long;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix or vector shape does not match the rack dimensions.
struct DimensionMismatch : Error { using Error::Error; };

/// A bin has an empty slot in front of an occupied one. Gravity makes such a
/// state physically impossible, so it is rejected at construction.
struct NonContiguousBin : Error { using Error::Error; };

/// A transition was fired whose preconditions do not hold. The state is left
/// untouched.
struct NotEnabled : Error { using Error::Error; };

/// Quantity vectors of different lengths were combined.
struct LengthMismatch : Error { using Error::Error; };

/// An argument is outside its domain (bad bin index, bad product type, ...).
struct ValidationError : Error { using Error::Error; };

/// Exhaustive enumeration would exceed the configured budget.
struct BudgetExceeded : Error { using Error::Error; };

/// An input document could not be parsed.
struct ParseError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Rack geometry: `bins` deep channels of `slots_per_bin` locations each,
/// holding up to `num_types` distinct product types.
struct Dimensions {
    int bins = 0;
    int slots_per_bin = 0;
    int num_types = 0;

    int capacity() const { return bins * slots_per_bin; }
    void validate() const;

    bool operator==(const Dimensions&) const = default;
};

/// One location in the rack. Indices are 1-based; slot 1 is the retrieval
/// face, slot `slots_per_bin` the storage face.
struct LocationRef {
    int bin = 0;
    int slot = 0;

    auto operator<=>(const LocationRef&) const = default;
};

// ---------------------------------------------------------------------------
// Rack snapshot
// ---------------------------------------------------------------------------

/// Product type per location, row per bin. 0 means empty. A settled matrix
/// has every bin's occupied slots packed against the retrieval face.
class RackStateMatrix {
public:
    RackStateMatrix() = default;
    explicit RackStateMatrix(Dimensions dims);
    RackStateMatrix(Dimensions dims, const std::vector<std::vector<int>>& rows);

    const Dimensions& dims() const { return dims_; }

    int at(int bin, int slot) const;
    void set(int bin, int slot, int type);

    /// True when every bin's occupancy is a contiguous front prefix.
    bool settled() const;

    /// Number of occupied slots in one bin.
    int occupied_count(int bin) const;
    /// Largest occupied slot index in one bin, 0 when the bin is empty.
    int deepest_occupied(int bin) const;

    /// Item count per product type; index 0 is unused.
    std::vector<int> stock_by_type() const;
    int total_items() const;

    std::vector<std::vector<int>> rows() const;

    bool operator==(const RackStateMatrix&) const = default;

private:
    int index(int bin, int slot) const;

    Dimensions dims_{};
    std::vector<int> cells_;
};

// ---------------------------------------------------------------------------
// Requests
// ---------------------------------------------------------------------------

/// Non-negative quantity per product type (1-based access; index 0 of the
/// underlying storage is unused externally).
class RequestVector {
public:
    RequestVector() = default;
    explicit RequestVector(std::vector<int> quantities);

    /// All-zero vector over `num_types` product types.
    static RequestVector zeros(int num_types);

    int num_types() const { return static_cast<int>(q_.size()); }
    int at(int type) const;
    void set(int type, int quantity);

    int total() const;
    bool zero() const { return total() == 0; }

    const std::vector<int>& quantities() const { return q_; }

    RequestVector operator+(const RequestVector& other) const;

    bool operator==(const RequestVector&) const = default;

private:
    std::vector<int> q_;
};

}  // namespace flowrack
