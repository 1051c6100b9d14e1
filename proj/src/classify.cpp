#include "spreads/classify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "spreads/collineation.hpp"

namespace spreads {

GroupPair build_groups(const Geometry& g, bool assume_orders, uint64_t seed) {
    GroupPair gp;
    std::vector<Perm> gens = pgammal_line_generators(g);
    BigUint pgl_order = pgammal_order(g.q, g.field->e());
    BuildOptions bo;
    bo.seed = seed;
    if (assume_orders) bo.known_order = pgl_order;
    gp.pgl = StabChain::build(g.n_lines, gens, bo);
    if (gp.pgl->order() != pgl_order)
        throw std::logic_error("collineation group order mismatch: " +
                               gp.pgl->order().to_string());
    gp.duality = duality_line_perm(g);
    std::vector<Perm> ext_gens = gens;
    ext_gens.push_back(gp.duality);
    BuildOptions bo2;
    bo2.seed = seed ^ 0xe7;
    BigUint ext_order = pgl_order * 2;
    if (assume_orders) bo2.known_order = ext_order;
    gp.ext = StabChain::build(g.n_lines, ext_gens, bo2);
    if (gp.ext->order() != ext_order)
        throw std::logic_error("extended group order mismatch: " + gp.ext->order().to_string());
    return gp;
}

Deduper::Deduper(const Geometry& g, std::shared_ptr<const StabChain> ext, uint64_t seed)
    : g_(g), ext_(ext), seed_(seed), engine_(std::move(ext), seed) {}

void Deduper::merge(const std::vector<pt>& canon, pt root_image) {
    auto it = classes_.find(canon);
    if (it == classes_.end()) {
        SpreadClass c;
        c.canonical = canon;
        c.pair_marks = BitRow(g_.n_lines);
        it = classes_.emplace(canon, std::move(c)).first;
    }
    ++it->second.emissions;
    it->second.pair_marks.set(root_image);
}

void Deduper::insert(const Spread& s) {
    pt root_image = 0;  // image of the base line (line 0) under the transporter
    std::vector<pt> canon = engine_.min_image(s.lines, &root_image);
    merge(canon, root_image);
}

void Deduper::insert_batch(const std::vector<Spread>& spreads, int jobs) {
    std::vector<std::vector<pt>> canons(spreads.size());
    std::vector<pt> roots(spreads.size(), 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(std::max(1, jobs))
    {
        MinImageEngine local(ext_, seed_ ^ (0x9e3779b9u * (unsigned)(omp_get_thread_num() + 1)));
#pragma omp for schedule(dynamic, 8)
        for (long i = 0; i < (long)spreads.size(); ++i)
            canons[i] = local.min_image(spreads[i].lines, &roots[i]);
    }
#else
    (void)jobs;
    for (size_t i = 0; i < spreads.size(); ++i)
        canons[i] = engine_.min_image(spreads[i].lines, &roots[i]);
#endif
    for (size_t i = 0; i < spreads.size(); ++i) merge(canons[i], roots[i]);
}

std::vector<SpreadClass> Deduper::finish(const GroupPair& groups, uint64_t seed) {
    std::vector<SpreadClass> out;
    out.reserve(classes_.size());
    std::mt19937_64 rng(seed);
    for (auto& [key, cls] : classes_) {
        SetwiseStab ext_stab = setwise_stabilizer(groups.ext, cls.canonical, rng());
        SetwiseStab pgl_stab = setwise_stabilizer(groups.pgl, cls.canonical, rng());
        cls.aut_order = ext_stab.order;
        cls.pgl_order = pgl_stab.order;
        BigUint twice = cls.pgl_order * 2;
        if (cls.aut_order == twice)
            cls.one_class = true;
        else if (cls.aut_order == cls.pgl_order)
            cls.one_class = false;
        else
            throw std::logic_error("stabilizer ratio violation: aut " +
                                   cls.aut_order.to_string() + " vs pgl " +
                                   cls.pgl_order.to_string());
        out.push_back(cls);
    }
    return out;
}

std::vector<Spread> class_representatives(const SpreadClass& c, const GroupPair& groups) {
    std::vector<Spread> reps;
    Spread first;
    first.lines = c.canonical;
    reps.push_back(first);
    if (!c.one_class) {
        Spread second;
        second.lines = apply_to_set(groups.duality, c.canonical);
        reps.push_back(second);
    }
    return reps;
}

PairCheckReport pair_consistency_check(const std::vector<SpreadClass>& classes,
                                       const Geometry& g, const GroupPair& groups,
                                       uint64_t seed) {
    PairCheckReport rep;
    std::mt19937_64 rng(seed);
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        const SpreadClass& cls = classes[ci];
        SetwiseStab stab = setwise_stabilizer(groups.ext, cls.canonical, rng());
        // orbits of the class stabilizer on lines outside the spread; every
        // orbit must carry at least one recorded mark
        OrbitForest fo = make_orbit_forest(g.n_lines, stab.gens);
        std::vector<char> in_spread(g.n_lines, 0);
        for (pt l : cls.canonical) in_spread[l] = 1;
        std::vector<char> orbit_marked(g.n_lines, 0);
        cls.pair_marks.for_each([&](size_t l) {
            if (in_spread[l]) throw std::logic_error("pair mark inside the spread");
            orbit_marked[fo.root[l]] = 1;
        });
        for (int l = 0; l < g.n_lines; ++l) {
            // orbit representatives outside the spread (the stabilizer cannot
            // mix spread lines with outside lines)
            if (in_spread[l] || fo.root[l] != l) continue;
            if (!orbit_marked[l]) {
                rep.failures.push_back("class " + std::to_string(ci) + ": no discovered pair for line orbit of " +
                                       std::to_string(l));
            }
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

std::vector<OrderHistogramRow> group_order_table(const std::vector<SpreadClass>& classes) {
    std::map<std::string, OrderHistogramRow> rows;  // keyed by zero-padded order
    for (const SpreadClass& c : classes) {
        std::string s = c.pgl_order.to_string();
        std::string key = std::string(32 - s.size(), '0') + s;
        auto& row = rows[key];
        row.order = c.pgl_order;
        if (c.one_class)
            ++row.one_class;
        else
            ++row.two_class;
    }
    std::vector<OrderHistogramRow> out;
    for (auto& [k, v] : rows) out.push_back(v);
    return out;
}

void write_order_table(const std::vector<OrderHistogramRow>& rows, std::ostream& os) {
    os << "order one_class two_class total\n";
    for (const auto& r : rows)
        os << r.order.to_string() << " " << r.one_class << " " << r.two_class << " "
           << r.total() << "\n";
}

}  // namespace spreads
