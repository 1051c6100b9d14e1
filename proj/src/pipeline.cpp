#include "spreads/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spreads/collineation.hpp"

namespace spreads {

namespace fs = std::filesystem;

namespace {

std::pair<int, int> pe_of_q(int q) {
    switch (q) {
        case 2: return {2, 1};
        case 3: return {3, 1};
        case 4: return {2, 2};
        case 5: return {5, 1};
        case 7: return {7, 1};
        case 8: return {2, 3};
        case 9: return {3, 2};
        default: throw std::invalid_argument("unsupported q (supported: 2,3,4,5,7,8,9)");
    }
}

std::string starter_line(const Starter& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.lines.size(); ++i) {
        if (i) os << ' ';
        os << s.lines[i];
    }
    return os.str();
}

std::string spread_line(const std::vector<pt>& lines) {
    std::ostringstream os;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (i) os << ' ';
        os << lines[i];
    }
    return os.str();
}

struct CheckpointIo {
    fs::path dir;
    int q;

    fs::path path(int idx) const {
        char buf[32];
        snprintf(buf, sizeof(buf), "starter_%05d.txt", idx);
        return dir / buf;
    }

    // Returns solutions if the checkpoint is complete, nullopt otherwise.
    std::optional<std::vector<Spread>> load(int idx, const Starter& st) const {
        std::ifstream in(path(idx));
        if (!in) return std::nullopt;
        std::string header;
        if (!std::getline(in, header)) return std::nullopt;
        std::ostringstream want;
        want << "starter " << idx << " q " << q << " lines " << starter_line(st);
        if (header != want.str())
            throw std::runtime_error("checkpoint mismatch in " + path(idx).string());
        std::vector<Spread> sols;
        std::string line;
        bool done = false;
        while (std::getline(in, line)) {
            if (line.rfind("done ", 0) == 0) {
                if ((uint64_t)std::stoull(line.substr(5)) != sols.size())
                    throw std::runtime_error("checkpoint count mismatch in " + path(idx).string());
                done = true;
                break;
            }
            Spread sp;
            std::istringstream ls(line);
            int v;
            while (ls >> v) sp.lines.push_back((pt)v);
            sols.push_back(std::move(sp));
        }
        if (!done) return std::nullopt;
        return sols;
    }

    void store(int idx, const Starter& st, const std::vector<Spread>& sols) const {
        fs::path tmp = path(idx);
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << "starter " << idx << " q " << q << " lines " << starter_line(st) << "\n";
            for (const Spread& sp : sols) out << spread_line(sp.lines) << "\n";
            out << "done " << sols.size() << "\n";
        }
        fs::rename(tmp, path(idx));
    }
};

}  // namespace

uint64_t starter_list_hash(const std::vector<Starter>& starters) {
    uint64_t h = 1469598103934665603ull;
    for (const Starter& s : starters)
        for (pt l : s.lines) {
            h ^= l;
            h *= 1099511628211ull;
        }
    return h;
}

RunResult run_pipeline(const RunConfig& cfg, std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        auto d = std::chrono::steady_clock::now() - t0;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count() / 1000.0;
    };
    RunResult res;
    auto [p, e] = pe_of_q(cfg.q);
    const Field& f = Field::get(p, e);
    Geometry g = build_geometry(f);
    log << "[" << elapsed() << "s] geometry: " << g.n_points << " points, " << g.n_lines
        << " lines\n";
    GroupPair groups = build_groups(g, true, cfg.seed);
    log << "[" << elapsed() << "s] groups: |pgl| = " << groups.pgl->order().to_string()
        << ", |ext| = " << groups.ext->order().to_string() << "\n";

    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    // --- stage: starters -----------------------------------------------------
    std::vector<Starter> starters = enumerate_starters(g, groups.ext, cfg.seed ^ 0x5717);
    res.n_starters = (int)starters.size();
    log << "[" << elapsed() << "s] starters: " << starters.size() << " classes\n";
    if (cfg.stages.count(Stage::Starters)) {
        std::ofstream sf(out / "starters.txt");
        for (const Starter& s : starters) sf << starter_line(s) << "\n";

        IdentityCheckReport idr = starter_identity_check(g, groups.ext, starters, cfg.seed ^ 0x1d);
        res.identity_ok = idr.ok;
        std::ofstream irf(out / "identity.txt");
        irf << "lhs " << idr.lhs.to_string() << "\n";
        irf << "rhs " << idr.rhs.to_string() << "\n";
        irf << "equal " << (idr.ok ? "yes" : "no") << "\n";
        for (const auto& row : idr.rows)
            irf << row.starter << " orbit " << row.orbit_size.to_string() << " stab "
                << row.stab_order.to_string() << " t " << row.transversals << "\n";
        log << "[" << elapsed() << "s] counting identity: lhs = " << idr.lhs.to_string()
            << ", rhs = " << idr.rhs.to_string() << (idr.ok ? " (equal)" : " (MISMATCH)") << "\n";
        if (!idr.ok) throw std::runtime_error("starter counting identity failed");
    }
    if (!cfg.stages.count(Stage::Complete)) return res;

    // --- stage: complete ------------------------------------------------------
    int lo = 0, hi = (int)starters.size();
    if (cfg.starter_range) {
        lo = std::max(lo, cfg.starter_range->first);
        hi = std::min(hi, cfg.starter_range->second);
    }
    std::optional<CheckpointIo> ck;
    if (!cfg.checkpoint_dir.empty()) {
        ck = CheckpointIo{fs::path(cfg.checkpoint_dir), cfg.q};
        fs::create_directories(ck->dir);
        fs::path lpath = ck->dir / "ledger.txt";
        std::ostringstream head;
        head << "q " << cfg.q << " starters " << starters.size() << " hash "
             << starter_list_hash(starters);
        if (cfg.resume) {
            std::ifstream lin(lpath);
            std::string first;
            if (!lin || !std::getline(lin, first))
                throw std::runtime_error("resume requested but no ledger in " + ck->dir.string());
            if (first != head.str())
                throw std::runtime_error("resume config mismatch: ledger says '" + first +
                                         "', run is '" + head.str() + "'");
        } else {
            // write the header and all-pending rows before dispatching, so an
            // interrupted run leaves a resumable ledger
            std::ofstream lf(lpath);
            lf << head.str() << "\n";
            for (size_t i = 0; i < starters.size(); ++i) lf << i << " pending 0 0\n";
        }
    }

    std::vector<std::vector<Spread>> solutions(starters.size());
    std::vector<char> loaded(starters.size(), 0);
    std::vector<int64_t> job_ms(starters.size(), 0);
    if (ck && cfg.resume) {
        for (int i = lo; i < hi; ++i) {
            auto got = ck->load(i, starters[i]);
            if (got) {
                solutions[i] = std::move(*got);
                loaded[i] = 1;
            }
        }
    }
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, cfg.jobs));
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = lo; i < hi; ++i) {
        if (loaded[i]) continue;
        auto js = std::chrono::steady_clock::now();
        ExactCoverInstance inst = build_instance(g, starters[i]);
        std::vector<Spread> sols;
        complete_starter(g, inst, [&](const Spread& sp) { sols.push_back(sp); });
        job_ms[i] = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - js)
                        .count();
        if (ck) ck->store(i, starters[i], sols);
        solutions[i] = std::move(sols);
    }
    uint64_t total = 0;
    for (int i = lo; i < hi; ++i) total += solutions[i].size();
    res.solutions = total;
    log << "[" << elapsed() << "s] completions: " << total << " spreads from starters [" << lo
        << "," << hi << ")\n";

    if (ck) {
        std::ofstream lf(ck->dir / "ledger.txt");
        lf << "q " << cfg.q << " starters " << starters.size() << " hash "
           << starter_list_hash(starters) << "\n";
        for (int i = 0; i < (int)starters.size(); ++i) {
            if (i >= lo && i < hi)
                lf << i << " done " << solutions[i].size() << " " << job_ms[i] << "\n";
            else
                lf << i << " pending 0 0\n";
        }
        lf << "total " << total << "\n";
    }
    if (!cfg.stages.count(Stage::Classify)) return res;

    // --- stage: classify -----------------------------------------------------
    Deduper dd(g, groups.ext, cfg.seed ^ 0xdd);
    {
        std::vector<Spread> stream;
        for (int i = lo; i < hi; ++i)
            for (const Spread& sp : solutions[i]) stream.push_back(sp);
        dd.insert_batch(stream, cfg.jobs);
    }
    std::vector<SpreadClass> classes = dd.finish(groups, cfg.seed ^ 0xf1);
    res.ext_classes = (int)classes.size();
    int pgl_total = 0;
    for (const auto& c : classes) pgl_total += c.one_class ? 1 : 2;
    res.pgl_classes = pgl_total;
    log << "[" << elapsed() << "s] classes: " << classes.size() << " extended, " << pgl_total
        << " under the collineation group\n";

    {
        std::ofstream cf(out / "classes_ext.txt");
        for (const auto& c : classes) cf << spread_line(c.canonical) << "\n";
        std::ofstream pf(out / "classes_pgl.txt");
        for (const auto& c : classes)
            for (const Spread& rep : class_representatives(c, groups))
                pf << spread_line(rep.lines) << "\n";
        std::ofstream of(out / "order_table.txt");
        write_order_table(group_order_table(classes), of);
    }

    PairCheckReport pcr = pair_consistency_check(classes, g, groups, cfg.seed ^ 0x9a);
    res.pair_check_ok = pcr.ok;
    log << "[" << elapsed() << "s] pair consistency: " << (pcr.ok ? "pass" : "FAIL") << "\n";
    if (!pcr.ok) {
        for (const auto& s : pcr.failures) log << "  " << s << "\n";
        throw std::runtime_error("pair consistency check failed");
    }

    // --- stage: spread sets ----------------------------------------------------
    std::vector<Spread> pgl_reps;
    for (const auto& c : classes)
        for (const Spread& rep : class_representatives(c, groups)) pgl_reps.push_back(rep);
    if (cfg.stages.count(Stage::SpreadSets)) {
        std::ofstream ef(out / "spreadsets_ext.txt");
        for (const auto& c : classes) {
            Spread rep;
            rep.lines = c.canonical;
            ef << encode_line(to_spread_set(g, rep)) << "\n";
        }
        std::ofstream pf(out / "spreadsets_pgl.txt");
        for (const Spread& rep : pgl_reps) pf << encode_line(to_spread_set(g, rep)) << "\n";
        log << "[" << elapsed() << "s] spread sets written\n";
    }
    if (!cfg.stages.count(Stage::Ranks)) return res;

    // --- stage: ranks -----------------------------------------------------------
    res.ranks.resize(pgl_reps.size());
    std::vector<RankReport> reports(pgl_reps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < (int)pgl_reps.size(); ++i) {
        TranslationPlane pl = build_plane(g, pgl_reps[i]);
        reports[i] = rank_report(i, pl, f.p());
        res.ranks[i] = reports[i].rank;
    }
    {
        std::ofstream rf(out / "ranks.txt");
        for (const RankReport& r : reports)
            rf << r.plane_id << " " << r.rank << " bound " << r.bound.to_string() << " "
               << (r.meets_bound ? "met" : "above") << "\n";
        rf << "histogram\n";
        for (auto [r, c] : rank_histogram(res.ranks)) rf << r << " " << c << "\n";
    }
    log << "[" << elapsed() << "s] ranks done\n";
    return res;
}

RankFileResult rank_spreadset_file(const Geometry& g, std::istream& in, std::ostream& report,
                                   std::ostream* dump_first) {
    RankFileResult out;
    std::string line;
    int lineno = 0;
    std::vector<int> ranks;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            SpreadSet ss = decode_line(line, *g.field);
            Spread sp = from_spread_set(g, ss);
            TranslationPlane pl = build_plane(g, sp);
            if (dump_first) {
                dump_incidence(pl, *dump_first);
                dump_first = nullptr;
            }
            RankReport rr = rank_report(lineno, pl, g.field->p());
            out.rows.push_back({lineno, rr.rank});
            ranks.push_back(rr.rank);
            report << lineno << " " << rr.rank << " bound " << rr.bound.to_string() << " "
                   << (rr.meets_bound ? "met" : "above") << "\n";
        } catch (const std::exception& ex) {
            out.errors.push_back("line " + std::to_string(lineno) + ": " + ex.what());
            out.all_ok = false;
            report << lineno << " error " << ex.what() << "\n";
        }
    }
    report << "histogram\n";
    for (auto [r, c] : rank_histogram(ranks)) report << r << " " << c << "\n";
    return out;
}

bool run_checks(int q, std::ostream& log) {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        log << (cond ? "  ok: " : "  FAIL: ") << what << "\n";
        ok = ok && cond;
    };
    auto [p, e] = pe_of_q(q);
    const Field& f = Field::get(p, e);
    // field axioms, exhaustively (q <= 9 keeps this trivial)
    bool ax = true;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            ax = ax && (f.add((Fe)a, (Fe)b) == f.add((Fe)b, (Fe)a));
            ax = ax && (f.mul((Fe)a, (Fe)b) == f.mul((Fe)b, (Fe)a));
            for (int c = 0; c < q; ++c) {
                ax = ax && (f.mul((Fe)a, f.add((Fe)b, (Fe)c)) ==
                            f.add(f.mul((Fe)a, (Fe)b), f.mul((Fe)a, (Fe)c)));
                ax = ax && (f.add(f.add((Fe)a, (Fe)b), (Fe)c) ==
                            f.add((Fe)a, f.add((Fe)b, (Fe)c)));
                ax = ax && (f.mul(f.mul((Fe)a, (Fe)b), (Fe)c) ==
                            f.mul((Fe)a, f.mul((Fe)b, (Fe)c)));
            }
        }
    expect(ax, "field axioms in GF(" + std::to_string(q) + ")");

    Geometry g = build_geometry(f);
    expect(g.n_points == (q * q + 1) * (q + 1), "point count");
    expect(g.n_lines == (q * q + 1) * (q * q + q + 1), "line count");
    GammaCheckReport gc = gamma_structure_check(g);
    expect(gc.ok, "line graph clique structure (" + std::to_string(gc.edges) + " edges)");

    GroupPair groups = build_groups(g);
    expect(groups.pgl->order() == pgammal_order(q, e), "collineation group order");
    expect(groups.ext->order() == pgammal_order(q, e) * 2, "extended group order");
    expect(!groups.pgl->contains(groups.duality), "duality outside the collineation image");
    Perm d2 = groups.duality * groups.duality;
    expect(d2.is_identity(), "duality is an involution");
    // duality preserves adjacency on a sample
    std::mt19937_64 rng(12345);
    bool adj = true;
    for (int t = 0; t < 2000; ++t) {
        pt l1 = (pt)(rng() % g.n_lines), l2 = (pt)(rng() % g.n_lines);
        if (l1 == l2) continue;
        adj = adj && (g.gamma.get(l1, l2) ==
                      g.gamma.get(groups.duality[l1], groups.duality[l2]));
    }
    expect(adj, "duality preserves the line graph");
    return ok;
}

}  // namespace spreads
