#include "spreads/perm.hpp"

#include <algorithm>

namespace spreads {

std::vector<pt> apply_to_set(const Perm& g, const std::vector<pt>& s) {
    std::vector<pt> r;
    r.reserve(s.size());
    for (pt x : s) r.push_back(g[x]);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace spreads
