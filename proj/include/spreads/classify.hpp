#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "spreads/bigint.hpp"
#include "spreads/bits.hpp"
#include "spreads/geometry.hpp"
#include "spreads/group_search.hpp"
#include "spreads/search.hpp"

namespace spreads {

// One orbit of spreads under the duality-extended group.
struct SpreadClass {
    std::vector<pt> canonical;   // least set in the extended-group orbit
    BigUint aut_order;           // stabilizer order in the extended group
    BigUint pgl_order;           // stabilizer order in the collineation image
    bool one_class = false;      // aut == 2*pgl: the class is a single spread class
    uint64_t emissions = 0;      // how many solver emissions landed here
    BitRow pair_marks;           // root-line images discovered for the pair check
};

// Groups used throughout classification. `ext` is <pgl, duality>.
struct GroupPair {
    std::shared_ptr<const StabChain> pgl;
    std::shared_ptr<const StabChain> ext;
    Perm duality;
};

// Builds both chains. When `assume_orders` is set the closed-form orders are
// used to terminate chain construction early (the build still proves them).
GroupPair build_groups(const Geometry& g, bool assume_orders = true, uint64_t seed = 0x9a0b5);

// Isomorph rejection: collapses a stream of spreads to extended-group classes.
// Records, per class, the root-line image of every emission for the
// pair-consistency check. Deterministic: the class set is independent of
// insertion order.
class Deduper {
public:
    Deduper(const Geometry& g, std::shared_ptr<const StabChain> ext, uint64_t seed = 0xded09e);
    void insert(const Spread& s);
    // Concurrent-canonicalization insert: parallel map to canonical images
    // (one engine per thread over the shared chain), single-threaded merge.
    // The class set is identical to sequential insertion in any order.
    void insert_batch(const std::vector<Spread>& spreads, int jobs);
    // Finishes: computes stabilizer orders and the duality split for each class.
    std::vector<SpreadClass> finish(const GroupPair& groups, uint64_t seed = 0x5b117);
    size_t size() const { return classes_.size(); }

private:
    void merge(const std::vector<pt>& canon, pt root_image);
    const Geometry& g_;
    std::shared_ptr<const StabChain> ext_;
    uint64_t seed_;
    MinImageEngine engine_;
    std::map<std::vector<pt>, SpreadClass> classes_;
};

// 1 or 2 representatives per class: the canonical spread, plus its image under
// the fixed duality when the class splits into two spread classes.
std::vector<Spread> class_representatives(const SpreadClass& c, const GroupPair& groups);

// For every class: the recorded pair marks must hit every orbit of the class
// stabilizer on the lines outside the spread. Throws nothing; returns a
// per-class pass list with an overall flag.
struct PairCheckReport {
    bool ok = false;
    std::vector<std::string> failures;
};
PairCheckReport pair_consistency_check(const std::vector<SpreadClass>& classes,
                                       const Geometry& g, const GroupPair& groups,
                                       uint64_t seed = 0x9a1c);

// Table rows: stabilizer order in the collineation image vs split status.
struct OrderHistogramRow {
    BigUint order;
    int one_class = 0;
    int two_class = 0;
    int total() const { return one_class + two_class; }
};
std::vector<OrderHistogramRow> group_order_table(const std::vector<SpreadClass>& classes);

void write_order_table(const std::vector<OrderHistogramRow>& rows, std::ostream& os);

}  // namespace spreads
