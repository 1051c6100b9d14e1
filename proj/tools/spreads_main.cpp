// Command-line front end: classification pipeline for line spreads of PG(3,q)
// and the translation-plane invariants derived from them.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spreads/pipeline.hpp"

using namespace spreads;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--q", cfg.q, "field order (2,3,4,5,7,8,9)")
        ->envname("SPREADS_Q");
    cmd->add_option("--jobs", cfg.jobs, "worker threads")->envname("SPREADS_JOBS");
    cmd->add_option("--out", cfg.out_dir, "artifact directory")->envname("SPREADS_OUT");
    cmd->add_option("--checkpoint-dir", cfg.checkpoint_dir, "checkpoint directory")
        ->envname("SPREADS_CHECKPOINT_DIR");
    cmd->add_option("--seed", cfg.seed, "seed for randomized internals")
        ->envname("SPREADS_SEED");
    cmd->add_option_function<std::string>(
           "--starter-range",
           [&cfg](const std::string& v) {
               auto dots = v.find("..");
               if (dots == std::string::npos)
                   throw CLI::ValidationError("--starter-range expects A..B");
               cfg.starter_range = {std::stoi(v.substr(0, dots)), std::stoi(v.substr(dots + 2))};
           },
           "starter index range A..B (half-open)")
        ->envname("SPREADS_STARTER_RANGE");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"line spreads of PG(3,q): search, classification, spread sets, plane ranks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string rank_input;
    std::string gamma_dump;

    CLI::App* c_starters = app.add_subcommand("starters", "enumerate starters and verify the counting identity");
    add_common(c_starters, cfg);

    CLI::App* c_classify = app.add_subcommand("classify", "full pipeline: starters, completion, classes, spread sets, ranks");
    add_common(c_classify, cfg);

    CLI::App* c_resume = app.add_subcommand("resume", "finish an interrupted classify run from its checkpoints");
    add_common(c_resume, cfg);

    CLI::App* c_spreadsets = app.add_subcommand("spreadsets", "pipeline through spread-set emission (no ranks)");
    add_common(c_spreadsets, cfg);

    CLI::App* c_rank = app.add_subcommand("rank", "rank the planes of a spread-set file");
    add_common(c_rank, cfg);
    c_rank->add_option("--in", rank_input, "spread-set file (one encoded set per line)")
        ->required();
    std::string incidence_dump;
    c_rank->add_option("--dump-incidence", incidence_dump,
                       "write the first plane's incidence matrix (sparse triplets) here");

    CLI::App* c_check = app.add_subcommand("check", "run the invariant suite");
    add_common(c_check, cfg);
    c_check->add_option("--dump-gamma", gamma_dump, "also dump the line graph to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_starters->parsed()) {
            cfg.stages = {Stage::Starters};
            RunResult r = run_pipeline(cfg, std::cout);
            std::cout << r.n_starters << " starters, identity "
                      << (r.identity_ok ? "holds" : "fails") << "\n";
            return r.identity_ok ? kExitOk : kExitInvariant;
        }
        if (c_classify->parsed() || c_resume->parsed() || c_spreadsets->parsed()) {
            if (c_resume->parsed()) {
                cfg.resume = true;
                if (cfg.checkpoint_dir.empty())
                    throw std::runtime_error("resume requires --checkpoint-dir");
            }
            if (c_spreadsets->parsed())
                cfg.stages = {Stage::Starters, Stage::Complete, Stage::Classify,
                              Stage::SpreadSets};
            RunResult r = run_pipeline(cfg, std::cout);
            std::cout << r.ext_classes << " extended classes, " << r.pgl_classes
                      << " spread classes\n";
            return kExitOk;
        }
        if (c_rank->parsed()) {
            auto pe = [&] {
                switch (cfg.q) {
                    case 2: return std::pair{2, 1};
                    case 3: return std::pair{3, 1};
                    case 4: return std::pair{2, 2};
                    case 5: return std::pair{5, 1};
                    case 7: return std::pair{7, 1};
                    case 8: return std::pair{2, 3};
                    case 9: return std::pair{3, 2};
                }
                throw std::runtime_error("unsupported q");
            }();
            const Field& f = Field::get(pe.first, pe.second);
            Geometry g = build_geometry(f);
            std::ifstream in(rank_input);
            if (!in) throw std::runtime_error("cannot open " + rank_input);
            std::ofstream rep(std::filesystem::path(cfg.out_dir) / "rank_report.txt");
            std::ofstream inc;
            if (!incidence_dump.empty()) inc.open(incidence_dump);
            RankFileResult r = rank_spreadset_file(g, in, rep,
                                                   incidence_dump.empty() ? nullptr : &inc);
            std::cout << r.rows.size() << " planes ranked, " << r.errors.size()
                      << " malformed lines\n";
            for (const auto& e : r.errors) std::cerr << e << "\n";
            return r.all_ok ? kExitOk : kExitInvariant;
        }
        if (c_check->parsed()) {
            bool ok = run_checks(cfg.q, std::cout);
            if (!gamma_dump.empty()) {
                auto pe = cfg.q == 4 ? std::pair{2, 2}
                          : cfg.q == 8 ? std::pair{2, 3}
                          : cfg.q == 9 ? std::pair{3, 2}
                                       : std::pair{cfg.q, 1};
                Geometry g = build_geometry(Field::get(pe.first, pe.second));
                std::ofstream out(gamma_dump);
                dump_gamma(g, out);
            }
            return ok ? kExitOk : kExitInvariant;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}
