#include "flowrack/types.hpp"

#include <numeric>

namespace flowrack {

void Dimensions::validate() const {
    if (bins < 1 || slots_per_bin < 1 || num_types < 1) {
        throw ValidationError("dimensions must all be at least 1 (bins=" + std::to_string(bins) +
                              ", slots=" + std::to_string(slots_per_bin) +
                              ", types=" + std::to_string(num_types) + ")");
    }
}

RackStateMatrix::RackStateMatrix(Dimensions dims) : dims_(dims) {
    dims_.validate();
    cells_.assign(static_cast<size_t>(dims_.capacity()), 0);
}

RackStateMatrix::RackStateMatrix(Dimensions dims, const std::vector<std::vector<int>>& rows)
    : RackStateMatrix(dims) {
    if (static_cast<int>(rows.size()) != dims_.bins) {
        throw DimensionMismatch("expected " + std::to_string(dims_.bins) + " bin rows, got " +
                                std::to_string(rows.size()));
    }
    for (int k = 1; k <= dims_.bins; ++k) {
        const auto& row = rows[static_cast<size_t>(k - 1)];
        if (static_cast<int>(row.size()) != dims_.slots_per_bin) {
            throw DimensionMismatch("bin " + std::to_string(k) + " has " +
                                    std::to_string(row.size()) + " slots, expected " +
                                    std::to_string(dims_.slots_per_bin));
        }
        for (int j = 1; j <= dims_.slots_per_bin; ++j) set(k, j, row[static_cast<size_t>(j - 1)]);
    }
}

int RackStateMatrix::index(int bin, int slot) const {
    if (bin < 1 || bin > dims_.bins || slot < 1 || slot > dims_.slots_per_bin) {
        throw ValidationError("location (" + std::to_string(bin) + "," + std::to_string(slot) +
                              ") outside a " + std::to_string(dims_.bins) + "x" +
                              std::to_string(dims_.slots_per_bin) + " rack");
    }
    return (bin - 1) * dims_.slots_per_bin + (slot - 1);
}

int RackStateMatrix::at(int bin, int slot) const {
    return cells_[static_cast<size_t>(index(bin, slot))];
}

void RackStateMatrix::set(int bin, int slot, int type) {
    if (type < 0 || type > dims_.num_types) {
        throw ValidationError("product type " + std::to_string(type) + " outside [0," +
                              std::to_string(dims_.num_types) + "]");
    }
    cells_[static_cast<size_t>(index(bin, slot))] = type;
}

bool RackStateMatrix::settled() const {
    for (int k = 1; k <= dims_.bins; ++k) {
        bool gap_seen = false;
        for (int j = 1; j <= dims_.slots_per_bin; ++j) {
            if (at(k, j) == 0) {
                gap_seen = true;
            } else if (gap_seen) {
                return false;
            }
        }
    }
    return true;
}

int RackStateMatrix::occupied_count(int bin) const {
    int count = 0;
    for (int j = 1; j <= dims_.slots_per_bin; ++j)
        if (at(bin, j) != 0) ++count;
    return count;
}

int RackStateMatrix::deepest_occupied(int bin) const {
    for (int j = dims_.slots_per_bin; j >= 1; --j)
        if (at(bin, j) != 0) return j;
    return 0;
}

std::vector<int> RackStateMatrix::stock_by_type() const {
    std::vector<int> stock(static_cast<size_t>(dims_.num_types) + 1, 0);
    for (int value : cells_)
        if (value != 0) ++stock[static_cast<size_t>(value)];
    return stock;
}

int RackStateMatrix::total_items() const {
    int total = 0;
    for (int value : cells_)
        if (value != 0) ++total;
    return total;
}

std::vector<std::vector<int>> RackStateMatrix::rows() const {
    std::vector<std::vector<int>> out(static_cast<size_t>(dims_.bins));
    for (int k = 1; k <= dims_.bins; ++k) {
        auto& row = out[static_cast<size_t>(k - 1)];
        row.reserve(static_cast<size_t>(dims_.slots_per_bin));
        for (int j = 1; j <= dims_.slots_per_bin; ++j) row.push_back(at(k, j));
    }
    return out;
}

RequestVector RequestVector::zeros(int num_types) {
    if (num_types < 1) throw ValidationError("request vector needs at least one product type");
    RequestVector v;
    v.q_.assign(static_cast<size_t>(num_types), 0);
    return v;
}

RequestVector::RequestVector(std::vector<int> quantities) : q_(std::move(quantities)) {
    if (q_.empty()) throw ValidationError("request vector needs at least one product type");
    for (int value : q_)
        if (value < 0) throw ValidationError("request quantities must be non-negative");
}

int RequestVector::at(int type) const {
    if (type < 1 || type > num_types()) {
        throw ValidationError("product type " + std::to_string(type) + " outside [1," +
                              std::to_string(num_types()) + "]");
    }
    return q_[static_cast<size_t>(type - 1)];
}

void RequestVector::set(int type, int quantity) {
    if (quantity < 0) throw ValidationError("request quantities must be non-negative");
    if (type < 1 || type > num_types()) {
        throw ValidationError("product type " + std::to_string(type) + " outside [1," +
                              std::to_string(num_types()) + "]");
    }
    q_[static_cast<size_t>(type - 1)] = quantity;
}

int RequestVector::total() const {
    return std::accumulate(q_.begin(), q_.end(), 0);
}

RequestVector RequestVector::operator+(const RequestVector& other) const {
    if (num_types() != other.num_types()) {
        throw LengthMismatch("cannot add request vectors of lengths " +
                             std::to_string(num_types()) + " and " +
                             std::to_string(other.num_types()));
    }
    RequestVector sum(*this);
    for (size_t i = 0; i < q_.size(); ++i) sum.q_[i] += other.q_[i];
    return sum;
}

}  // namespace flowrack
