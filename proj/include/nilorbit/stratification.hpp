#pragma once

#include <cstdint>
#include <vector>

#include "nilorbit/polarization.hpp"

namespace nilorbit {

/// Ludwig-Zahir index set: ordered (j,k) pairs in the original-label
/// convention. All 2r flattened entries are distinct basis labels.
struct IndexSet {
    std::vector<std::pair<unsigned, unsigned>> pairs;

    std::size_t step_count() const { return pairs.size(); }
    std::size_t size() const { return 2 * pairs.size(); } // |I|
    bool empty() const { return pairs.empty(); }

    /// (j_1,k_1,j_2,k_2,...)
    std::vector<unsigned> flattened() const;
    /// Distinct labels ascending (the i_1 < ... < i_d of the orbit chart).
    std::vector<unsigned> sorted_labels() const;

    friend bool operator==(const IndexSet &a, const IndexSet &b) {
        return a.pairs == b.pairs;
    }
    friend bool operator!=(const IndexSet &a, const IndexSet &b) {
        return !(a == b);
    }
};

/// Lexicographic order: shorter index sets sort strictly smaller; equal
/// lengths compare pairwise with (j,k) < (j',k') iff j<j' or (j=j', k<k').
/// Returns -1, 0, +1.
int lex_compare(const IndexSet &a, const IndexSet &b);

IndexSet index_of(const Covector &l);

/// Index set I with its layer polynomial P_I in the dual coordinates
/// l1..ln and the labels whose coordinates vanish on the Pukanszky section.
struct LayerDescription {
    IndexSet index_set;
    MultiPoly P;
    std::vector<unsigned> section_constraints;
};

/// Runs the Ludwig-Zahir algorithm symbolically with l indeterminate,
/// forcing the step choices of I. P is the content-normalized product of
/// the numerators of the step scalars c_1..c_r. Throws InconsistentIndexSet
/// when a forced c_s is identically zero.
LayerDescription layer_polynomial(const AlgebraPtr &algebra, const IndexSet &I);

/// True iff index_of(l) = I and l vanishes on every label of I.
bool in_pukanszky_section(const Covector &l, const IndexSet &I);

struct DiscoveredLayer {
    IndexSet index_set;
    Covector witness;
    MultiPoly P;
};

/// Seeded random covectors (coordinates uniform on {-10..10} \ {0} under the
/// documented SplitMix64 stream), plus deterministic degeneration probes that
/// zero witness coordinates named in each discovered layer polynomial, so
/// non-generic layers below the sampled ones are found too. Distinct index
/// sets sorted lexicographically descending: front() is the candidate I_max.
/// Output is identical for any thread count.
std::vector<DiscoveredLayer> enumerate_layers(const AlgebraPtr &algebra,
                                              std::size_t sample_budget,
                                              std::uint64_t seed,
                                              unsigned threads = 1);

} // namespace nilorbit
