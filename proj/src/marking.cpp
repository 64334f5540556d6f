#include "flowrack/marking.hpp"

#include <algorithm>
#include <numeric>

namespace flowrack {

const char* to_string(Transition t) {
    switch (t) {
        case Transition::store: return "store";
        case Transition::reinsert: return "reinsert";
        case Transition::deliver: return "deliver";
        case Transition::recycle: return "recycle";
        case Transition::shift: return "shift";
    }
    return "?";
}

Transition transition_from_string(const std::string& name) {
    if (name == "store") return Transition::store;
    if (name == "reinsert") return Transition::reinsert;
    if (name == "deliver") return Transition::deliver;
    if (name == "recycle") return Transition::recycle;
    if (name == "shift") return Transition::shift;
    throw ParseError("unknown transition kind '" + name + "'");
}

Marking::Marking(Dimensions dims) : dims_(dims) {
    dims_.validate();
    cells_.assign(static_cast<size_t>(dims_.capacity()), 0);
    conveyor_.assign(static_cast<size_t>(dims_.num_types) + 1, 0);
    delivered_.assign(static_cast<size_t>(dims_.num_types) + 1, 0);
}

Marking Marking::from_cells(const RackStateMatrix& contents) {
    Marking mk(contents.dims());
    for (int k = 1; k <= mk.dims_.bins; ++k)
        for (int j = 1; j <= mk.dims_.slots_per_bin; ++j) mk.set_cell(k, j, contents.at(k, j));
    return mk;
}

Marking Marking::from_matrix(const RackStateMatrix& contents) {
    if (!contents.settled()) {
        throw NonContiguousBin("rack snapshot has an empty slot in front of an item");
    }
    return from_cells(contents);
}

int Marking::cell(int bin, int slot) const {
    return cells_[static_cast<size_t>((bin - 1) * dims_.slots_per_bin + (slot - 1))];
}

void Marking::set_cell(int bin, int slot, int type) {
    cells_[static_cast<size_t>((bin - 1) * dims_.slots_per_bin + (slot - 1))] = type;
}

void Marking::check_bin(int bin) const {
    if (bin < 1 || bin > dims_.bins) {
        throw ValidationError("bin " + std::to_string(bin) + " outside [1," +
                              std::to_string(dims_.bins) + "]");
    }
}

void Marking::check_type(int type) const {
    if (type < 1 || type > dims_.num_types) {
        throw ValidationError("product type " + std::to_string(type) + " outside [1," +
                              std::to_string(dims_.num_types) + "]");
    }
}

void Marking::store_raw(int type, int bin) {
    check_type(type);
    check_bin(bin);
    const int back = dims_.slots_per_bin;
    if (cell(bin, back) != 0) {
        throw NotEnabled("store: storage-face slot of bin " + std::to_string(bin) +
                         " is occupied");
    }
    set_cell(bin, back, type);
}

void Marking::reinsert_raw(int type, int bin) {
    check_type(type);
    check_bin(bin);
    const int back = dims_.slots_per_bin;
    if (conveyor_[static_cast<size_t>(type)] == 0) {
        throw NotEnabled("reinsert: no product of type " + std::to_string(type) +
                         " on the restoring conveyor");
    }
    if (cell(bin, back) != 0) {
        throw NotEnabled("reinsert: storage-face slot of bin " + std::to_string(bin) +
                         " is occupied");
    }
    --conveyor_[static_cast<size_t>(type)];
    set_cell(bin, back, type);
}

int Marking::deliver_raw(int bin) {
    check_bin(bin);
    const int type = cell(bin, 1);
    if (type == 0) {
        throw NotEnabled("deliver: retrieval-face slot of bin " + std::to_string(bin) +
                         " is empty");
    }
    set_cell(bin, 1, 0);
    ++delivered_[static_cast<size_t>(type)];
    return type;
}

int Marking::recycle_raw(int bin) {
    check_bin(bin);
    const int type = cell(bin, 1);
    if (type == 0) {
        throw NotEnabled("recycle: retrieval-face slot of bin " + std::to_string(bin) +
                         " is empty");
    }
    set_cell(bin, 1, 0);
    ++conveyor_[static_cast<size_t>(type)];
    return type;
}

bool Marking::can_shift(int bin, int slot) const {
    check_bin(bin);
    if (slot < 2 || slot > dims_.slots_per_bin) return false;
    return cell(bin, slot) != 0 && cell(bin, slot - 1) == 0;
}

void Marking::shift(int bin, int slot) {
    if (!can_shift(bin, slot)) {
        throw NotEnabled("shift: slot " + std::to_string(slot) + " of bin " +
                         std::to_string(bin) + " cannot move forward");
    }
    set_cell(bin, slot - 1, cell(bin, slot));
    set_cell(bin, slot, 0);
}

void Marking::settle(int bin) {
    check_bin(bin);
    // Stable compaction: the unique fixpoint of repeated shift firings.
    int write = 1;
    for (int j = 1; j <= dims_.slots_per_bin; ++j) {
        const int type = cell(bin, j);
        if (type == 0) continue;
        if (j != write) {
            set_cell(bin, write, type);
            set_cell(bin, j, 0);
        }
        ++write;
    }
}

void Marking::settle_all() {
    for (int k = 1; k <= dims_.bins; ++k) settle(k);
}

void Marking::store(int type, int bin) {
    store_raw(type, bin);
    settle(bin);
}

void Marking::reinsert(int type, int bin) {
    reinsert_raw(type, bin);
    settle(bin);
}

int Marking::deliver(int bin) {
    const int type = deliver_raw(bin);
    settle(bin);
    return type;
}

int Marking::recycle(int bin) {
    const int type = recycle_raw(bin);
    settle(bin);
    return type;
}

void Marking::apply(const Firing& firing) {
    switch (firing.kind) {
        case Transition::store: store(firing.type, firing.bin); return;
        case Transition::reinsert: reinsert(firing.type, firing.bin); return;
        case Transition::deliver: deliver(firing.bin); return;
        case Transition::recycle: recycle(firing.bin); return;
        case Transition::shift: shift(firing.bin, firing.slot); return;
    }
    throw ValidationError("unknown transition kind");
}

int Marking::type_at(int bin, int slot) const {
    check_bin(bin);
    if (slot < 1 || slot > dims_.slots_per_bin) {
        throw ValidationError("slot " + std::to_string(slot) + " outside [1," +
                              std::to_string(dims_.slots_per_bin) + "]");
    }
    return cell(bin, slot);
}

int Marking::occupied_count() const {
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                          [](int c) { return c != 0; }));
}

int Marking::empty_count() const { return dims_.capacity() - occupied_count(); }

bool Marking::settled() const { return to_matrix().settled(); }

bool Marking::bin_full(int bin) const {
    check_bin(bin);
    return cell(bin, dims_.slots_per_bin) != 0;
}

bool Marking::bin_front_occupied(int bin) const {
    check_bin(bin);
    return cell(bin, 1) != 0;
}

int Marking::conveyor_count(int type) const {
    check_type(type);
    return conveyor_[static_cast<size_t>(type)];
}

int Marking::conveyor_total() const {
    return std::accumulate(conveyor_.begin(), conveyor_.end(), 0);
}

int Marking::delivered_count(int type) const {
    check_type(type);
    return delivered_[static_cast<size_t>(type)];
}

int Marking::delivered_total() const {
    return std::accumulate(delivered_.begin(), delivered_.end(), 0);
}

RackStateMatrix Marking::to_matrix() const {
    RackStateMatrix matrix(dims_);
    for (int k = 1; k <= dims_.bins; ++k)
        for (int j = 1; j <= dims_.slots_per_bin; ++j) matrix.set(k, j, cell(k, j));
    return matrix;
}

std::vector<int> Marking::item_census() const {
    std::vector<int> census(static_cast<size_t>(dims_.num_types) + 1, 0);
    for (int c : cells_)
        if (c != 0) ++census[static_cast<size_t>(c)];
    for (int t = 1; t <= dims_.num_types; ++t) {
        census[static_cast<size_t>(t)] += conveyor_[static_cast<size_t>(t)];
        census[static_cast<size_t>(t)] += delivered_[static_cast<size_t>(t)];
    }
    return census;
}

}  // namespace flowrack
