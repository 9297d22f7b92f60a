// Partition combinatorics behind the slope bounds: nonincreasing vectors
// k with their digit weight s_p(k) = sum of s_p(k_l - k_{l+1}), the p-adic
// box matrix, tiling sequences r = sum a_i l_i p^{b_i} with multipliers from
// a fixed set S, the shortest-tiling weight s~_p(r, S), and the structural
// checks relating minimal-weight partitions to boxes and tilings.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace slopekit::tiling {

inline constexpr uint64_t kInfinity = ~uint64_t(0);
inline constexpr uint64_t kMaxR = 500;    // enumeration guardrail
inline constexpr uint32_t kMaxD = 12;

struct Partition {
    std::vector<uint64_t> k;   // k_1 >= k_2 >= ... >= k_d >= 0
    uint64_t r = 0;            // sum of the parts

    uint32_t d() const { return static_cast<uint32_t>(k.size()); }
    bool operator==(const Partition& o) const { return k == o.k; }
    bool operator<(const Partition& o) const { return k < o.k; }
};

Partition make_partition(std::vector<uint64_t> parts);

// Every partition of r into at most d parts (padded with zeros to length d),
// ascending lexicographic order.  Guardrails: r <= 500, d <= 12, and the
// result count is capped to keep memory sane.
std::vector<Partition> enumerate_partitions(uint64_t r, uint32_t d);

// s_p(k) = sum over l of s_p(k_l - k_{l+1}) with k_{d+1} = 0.
uint64_t weight(const Partition& k, uint32_t p);

struct PAdicBox {
    uint32_t p = 0;
    // entries[l][v]: row l (0-based, row 0 is k_1), column v = p-power.
    // Row d-1 holds the digits of k_d; row l adds the digits of k_l - k_{l+1}
    // to row l+1.  Row l reconstructs k_l as sum of entries[l][v] * p^v.
    std::vector<std::vector<uint32_t>> entries;

    uint32_t max_entry() const;
    uint64_t column_sum(uint32_t v) const;
};

PAdicBox padic_box(const Partition& k, uint32_t p);

struct TilingSequence {
    // triples [a_i, b_i, l_i]: l_i from S, 1 <= a_i <= p-1, b_i nondecreasing,
    // l_i strictly decreasing among equal b_i, and sum a_i l_i p^{b_i} = r.
    std::vector<std::array<uint32_t, 3>> triples;

    uint64_t length() const;   // sum of the a_i
    bool operator==(const TilingSequence& o) const { return triples == o.triples; }
};

bool valid_sequence(const TilingSequence& seq, uint64_t r, const std::vector<uint32_t>& S,
                    uint32_t p);

// s~_p(r, S): minimum sum of a_i over tiling sequences, or kInfinity.
uint64_t tilde_s(uint64_t r, const std::vector<uint32_t>& S, uint32_t p);

// W[v] = s~_p(v, S) for every v = 0..r_max (W[0] = 0), one knapsack pass.
std::vector<uint64_t> tilde_s_table(uint64_t r_max, const std::vector<uint32_t>& S,
                                    uint32_t p);

// All optimal sequences in canonical (b ascending, l descending) order;
// empty when s~ is infinite.
std::vector<TilingSequence> shortest_tilings(uint64_t r, const std::vector<uint32_t>& S,
                                             uint32_t p);

// The structural map from a tiling sequence to the partition whose box has
// k_{l,v} = sum of a_i over triples with b_i = v and l_i >= l.
Partition tiling_image(const TilingSequence& seq, uint32_t d, uint32_t p);

// All k in K_r (d parts) with k_l = k_{l+1} for every l not in S and
// s_p(k) = s~_p(r, S); empty when s~ is infinite.
std::vector<Partition> minimal_partitions(uint64_t r, const std::vector<uint32_t>& S,
                                          uint32_t p, uint32_t d);

struct CheckResult {
    bool ok = true;
    std::string detail;   // witness description when not ok

    explicit operator bool() const { return ok; }
};

// Verifies, by full enumeration, that (1) every S-constrained partition of r
// weighs at least s~_p(r, S) and (2) tiling_image is a bijection from the
// shortest sequences onto the minimal constrained partitions.
CheckResult bijection_check(uint64_t r, const std::vector<uint32_t>& S, uint32_t p,
                            uint32_t d);

// Digit-sum inequality for d = j(p^h - 1) rows: every k in K_r satisfies
// s_p(k) >= ceil(s_p(r) / sigma_d) with sigma_d = max digit sum over a
// single row value 1..d.  sigma_d equals h(p-1) exactly when j <= 2; for
// j >= 3 rows above 2p^h - 1 carry larger digit sums and the h(p-1)
// denominator is genuinely too big (d = 12, p = 5, r = 9 has a weight-1
// partition against ceil(5/4) = 2).  When j <= 2, minimizers at the h(p-1)
// equality threshold have box entries within 1 (2 when
// (p^2-1)/2 <= d < p^2-1) and every column obeys
// s_p(column sum) = k_{1,v} * h(p-1); those shape claims are the equality
// case of the h(p-1) quotient and do not extend to j >= 3.  For
// r = j(p^{bh} - 1) (any j) the boxes are strictly 0/1 and the minimum
// weight is exactly b.
CheckResult kbox_check(uint64_t r, uint32_t j, uint32_t h, uint32_t p);

}  // namespace slopekit::tiling
