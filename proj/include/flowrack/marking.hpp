#pragma once

#include "flowrack/types.hpp"

namespace flowrack {

/// The five transitions of the rack net.
///
///   store    - a new product enters the storage-face slot of a bin
///   reinsert - a product leaves the restoring conveyor and enters the
///              storage-face slot of a bin
///   deliver  - the retrieval-face item of a bin is evacuated to the
///              drop-off station
///   recycle  - the retrieval-face item of a bin is evacuated onto the
///              restoring conveyor
///   shift    - an item rolls one slot towards the retrieval face
enum class Transition { store, reinsert, deliver, recycle, shift };

const char* to_string(Transition t);
Transition transition_from_string(const std::string& name);

/// A transition together with its firing colour. `slot` is meaningful for
/// shift only; `type` is ignored by deliver/recycle (the front item decides).
struct Firing {
    Transition kind = Transition::store;
    int type = 0;
    int bin = 0;
    int slot = 0;

    bool operator==(const Firing&) const = default;
};

/// Complete token state of the rack net, as a value.
///
/// Four token places:
///   - empty locations            (one token per free slot)
///   - occupied locations         (one token per stored item, with its type)
///   - restoring conveyor         (multiset of product types in transit)
///   - drop-off accumulator       (multiset of delivered product types)
///
/// Every location holds exactly one token of the first two kinds, so
/// `empty_count() + occupied_count() == dims().capacity()` always. The
/// drop-off accumulator only grows; delivered items never re-enter.
///
/// Each firing rule moves tokens as follows:
///   store(p, k)    consumes the empty-location token (k, q) and one external
///                  arrival of type p; produces occupied token (p, k, q).
///   reinsert(p, k) consumes conveyor token p and empty-location token (k, q);
///                  produces occupied token (p, k, q).
///   deliver(k)     consumes occupied token (p, k, 1); produces empty-location
///                  token (k, 1) and drop-off token p.
///   recycle(k)     consumes occupied token (p, k, 1); produces empty-location
///                  token (k, 1) and conveyor token p.
///   shift(k, j)    consumes occupied token (p, k, j) and empty-location token
///                  (k, j-1); produces occupied token (p, k, j-1) and
///                  empty-location token (k, j).
///
/// The plain `store`/`reinsert`/`deliver`/`recycle` member functions settle
/// the affected bin before returning, because item roll is instantaneous
/// relative to machine motion. The `*_raw` variants fire a single transition
/// and are intended for tests that exercise shift interleavings.
///
/// Firing a transition that is not enabled throws NotEnabled and leaves the
/// marking unchanged.
class Marking {
public:
    /// Empty rack: every location free, conveyor and drop-off empty.
    explicit Marking(Dimensions dims);

    /// Build from a settled rack snapshot. Throws NonContiguousBin if any bin
    /// has a gap in front of an item.
    static Marking from_matrix(const RackStateMatrix& contents);

    /// Build from an arbitrary (possibly unsettled) snapshot. Test entry
    /// point for shift-order exploration.
    static Marking from_cells(const RackStateMatrix& contents);

    const Dimensions& dims() const { return dims_; }

    // -- transitions, settling the affected bin afterwards -------------------
    void store(int type, int bin);
    void reinsert(int type, int bin);
    int deliver(int bin);
    int recycle(int bin);

    // -- raw single firings ---------------------------------------------------
    void store_raw(int type, int bin);
    void reinsert_raw(int type, int bin);
    int deliver_raw(int bin);
    int recycle_raw(int bin);
    bool can_shift(int bin, int slot) const;
    void shift(int bin, int slot);

    /// Fire shift until no item has a free slot in front of it. Leaves the
    /// bin's items in their original relative order, packed to the front.
    void settle(int bin);
    void settle_all();

    /// Dispatch a recorded firing (settling variants for the four machine
    /// transitions, raw shift).
    void apply(const Firing& firing);

    // -- queries ---------------------------------------------------------------
    int type_at(int bin, int slot) const;  // 0 = empty
    int occupied_count() const;
    int empty_count() const;
    bool settled() const;
    bool bin_full(int bin) const;          // storage-face slot occupied
    bool bin_front_occupied(int bin) const;

    int conveyor_count(int type) const;
    int conveyor_total() const;
    int delivered_count(int type) const;
    int delivered_total() const;

    RackStateMatrix to_matrix() const;

    /// Per-type count across rack, conveyor and drop-off; index 0 unused.
    /// Changes only when store injects a new item.
    std::vector<int> item_census() const;

    bool operator==(const Marking&) const = default;

private:
    int cell(int bin, int slot) const;
    void set_cell(int bin, int slot, int type);
    void check_bin(int bin) const;
    void check_type(int type) const;

    Dimensions dims_{};
    std::vector<int> cells_;      // rack occupancy, 0 = empty
    std::vector<int> conveyor_;   // count per type, index 0 unused
    std::vector<int> delivered_;  // count per type, index 0 unused
};

}  // namespace flowrack
