// Independent reference implementations for the tiling tests: a memoized
// minimizer that follows the sequence grammar directly, and a plain DFS that
// enumerates every valid sequence outright for small radii.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "slopekit/tiling.hpp"

namespace tiling_oracle {

// tile shapes as (b, l) pairs in sequence order: b ascending, l descending
inline std::vector<std::pair<uint32_t, uint32_t>> canonical_pairs(
    uint64_t r, const std::vector<uint32_t>& S, uint32_t p) {
    std::vector<uint32_t> ls = S;
    std::sort(ls.begin(), ls.end(), std::greater<uint32_t>());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t b = 0;; ++b) {
        uint64_t pb = 1;
        bool overflow = false;
        for (uint32_t i = 0; i < b; ++i) {
            if (pb > r) { overflow = true; break; }
            pb *= p;
        }
        if (overflow || pb > r) break;
        bool any = false;
        for (uint32_t l : ls)
            if (static_cast<uint64_t>(l) * pb <= r) {
                pairs.push_back({b, l});
                any = true;
            }
        if (!any) break;
    }
    return pairs;
}

// minimum total multiplicity over all tiling sequences, straight from the
// definition, memoized on (pair index, remaining value)
inline uint64_t min_tiling_exhaustive(uint64_t r, const std::vector<uint32_t>& S,
                                      uint32_t p) {
    auto pairs = canonical_pairs(r, S, p);
    std::map<std::pair<size_t, uint64_t>, uint64_t> memo;
    std::function<uint64_t(size_t, uint64_t)> best = [&](size_t idx,
                                                         uint64_t v) -> uint64_t {
        if (v == 0) return 0;
        if (idx == pairs.size()) return slopekit::tiling::kInfinity;
        auto key = std::make_pair(idx, v);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        uint64_t res = best(idx + 1, v);
        uint64_t pb = 1;
        for (uint32_t i = 0; i < pairs[idx].first; ++i) pb *= p;
        uint64_t t = static_cast<uint64_t>(pairs[idx].second) * pb;
        for (uint32_t a = 1; a <= p - 1; ++a) {
            uint64_t take = static_cast<uint64_t>(a) * t;
            if (take > v) break;
            uint64_t rest = best(idx + 1, v - take);
            if (rest != slopekit::tiling::kInfinity)
                res = std::min(res, rest + a);
        }
        memo[key] = res;
        return res;
    };
    return best(0, r);
}

// every valid sequence for small r, by plain depth-first search
inline std::vector<slopekit::tiling::TilingSequence> all_sequences_small(
    uint64_t r, const std::vector<uint32_t>& S, uint32_t p) {
    auto pairs = canonical_pairs(r, S, p);
    std::vector<slopekit::tiling::TilingSequence> out;
    std::vector<std::array<uint32_t, 3>> cur;
    std::function<void(size_t, uint64_t)> walk = [&](size_t idx, uint64_t v) {
        if (v == 0) {
            out.push_back({cur});
            return;
        }
        if (idx == pairs.size()) return;
        walk(idx + 1, v);
        uint64_t pb = 1;
        for (uint32_t i = 0; i < pairs[idx].first; ++i) pb *= p;
        uint64_t t = static_cast<uint64_t>(pairs[idx].second) * pb;
        for (uint32_t a = 1; a <= p - 1; ++a) {
            uint64_t take = static_cast<uint64_t>(a) * t;
            if (take > v) break;
            cur.push_back({a, pairs[idx].first, pairs[idx].second});
            walk(idx + 1, v - take);
            cur.pop_back();
        }
    };
    walk(0, r);
    return out;
}

}  // namespace tiling_oracle
