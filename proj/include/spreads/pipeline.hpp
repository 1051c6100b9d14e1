#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spreads/classify.hpp"
#include "spreads/geometry.hpp"
#include "spreads/plane.hpp"
#include "spreads/search.hpp"
#include "spreads/spreadset.hpp"

namespace spreads {

enum class Stage { Starters, Complete, Classify, SpreadSets, Ranks };

struct RunConfig {
    int q = 2;
    std::set<Stage> stages = {Stage::Starters, Stage::Complete, Stage::Classify,
                              Stage::SpreadSets, Stage::Ranks};
    int jobs = 1;
    std::string out_dir = ".";
    std::string checkpoint_dir;  // empty: no checkpoints
    std::optional<std::pair<int, int>> starter_range;  // half-open [a, b)
    uint64_t seed = 0x5eedba5e;
    bool resume = false;  // only reuse completed checkpoint files
};

struct RunResult {
    int n_starters = 0;
    bool identity_ok = false;
    uint64_t solutions = 0;
    int ext_classes = 0;
    int pgl_classes = 0;
    bool pair_check_ok = true;
    std::vector<int> ranks;  // one per collineation class representative
};

// Runs the configured stages; writes artifacts under out_dir. Returns the
// summary. Throws std::runtime_error on invariant failures (counting
// identity, pair consistency, stabilizer ratio).
RunResult run_pipeline(const RunConfig& cfg, std::ostream& log);

// Decode a spread-set file and rank every line's plane. Malformed lines are
// reported and skipped; `all_ok` clears when any line fails.
struct RankFileResult {
    std::vector<std::pair<int, int>> rows;  // (input line number, rank)
    std::vector<std::string> errors;
    bool all_ok = true;
};
// `dump_first` (optional) receives the first decoded plane's incidence matrix
// as sparse triplets.
RankFileResult rank_spreadset_file(const Geometry& g, std::istream& in, std::ostream& report,
                                   std::ostream* dump_first = nullptr);

// Invariant suite for `check`: field axioms, geometry structure, group orders,
// duality properties. Returns true when everything holds.
bool run_checks(int q, std::ostream& log);

uint64_t starter_list_hash(const std::vector<Starter>& starters);

}  // namespace spreads
