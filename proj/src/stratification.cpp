#include "nilorbit/stratification.hpp"

#include <algorithm>
#include <thread>

#include "nilorbit/errors.hpp"
#include "nilorbit/prng.hpp"

namespace nilorbit {

std::vector<unsigned> IndexSet::flattened() const {
    std::vector<unsigned> out;
    out.reserve(size());
    for (const auto &[j, k] : pairs) {
        out.push_back(j);
        out.push_back(k);
    }
    return out;
}

std::vector<unsigned> IndexSet::sorted_labels() const {
    auto out = flattened();
    std::sort(out.begin(), out.end());
    return out;
}

int lex_compare(const IndexSet &a, const IndexSet &b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t s = 0; s < a.pairs.size(); ++s) {
        if (a.pairs[s] != b.pairs[s]) return a.pairs[s] < b.pairs[s] ? -1 : 1;
    }
    return 0;
}

IndexSet index_of(const Covector &l) {
    return IndexSet{ludwig_zahir(l).index_pairs};
}

namespace {

std::vector<std::string> dual_vars(std::size_t n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) v.push_back("l" + std::to_string(i));
    return v;
}

using SymVector = std::vector<RatFunction>;

SymVector sym_basis_vector(const std::vector<std::string> &vars, std::size_t n,
                           unsigned label) {
    SymVector v(n, RatFunction::constant(vars, Rational(0)));
    v[label - 1] = RatFunction::constant(vars, Rational(1));
    return v;
}

SymVector sym_bracket(const AlgebraPtr &alg, const std::vector<std::string> &vars,
                      const SymVector &x, const SymVector &y) {
    const std::size_t n = alg->dim();
    SymVector out(n, RatFunction::constant(vars, Rational(0)));
    for (unsigned i = 1; i <= n; ++i) {
        if (x[i - 1].is_zero()) continue;
        for (unsigned j = 1; j <= n; ++j) {
            if (i == j || y[j - 1].is_zero()) continue;
            RatFunction f = x[i - 1] * y[j - 1];
            RatVector b = alg->bracket_basis(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (!b[k].is_zero())
                    out[k] = out[k] + f * RatFunction::constant(vars, b[k]);
        }
    }
    return out;
}

// <L, v> with L the symbolic covector (l1,...,ln).
RatFunction sym_pairing(const std::vector<std::string> &vars, const SymVector &v) {
    RatFunction s = RatFunction::constant(vars, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        s = s + RatFunction::variable(vars, i) * v[i];
    }
    return s;
}

} // namespace

LayerDescription layer_polynomial(const AlgebraPtr &algebra, const IndexSet &I) {
    const std::size_t n = algebra->dim();
    auto vars = dual_vars(n);

    std::vector<SymVector> basis;
    std::vector<unsigned> labels;
    for (unsigned i = 1; i <= n; ++i) {
        basis.push_back(sym_basis_vector(vars, n, i));
        labels.push_back(i);
    }

    MultiPoly P = MultiPoly::constant(vars, Rational(1));
    for (const auto &[j_label, k_label] : I.pairs) {
        auto find_pos = [&](unsigned label) -> std::size_t {
            for (std::size_t p = 0; p < labels.size(); ++p)
                if (labels[p] == label) return p;
            throw Error(ErrorKind::inconsistent_index_set,
                        "label " + std::to_string(label) +
                            " is not present in the adapted basis at this step");
        };
        std::size_t j_pos = find_pos(j_label);
        std::size_t k_pos = find_pos(k_label);
        if (j_pos == k_pos)
            throw Error(ErrorKind::inconsistent_index_set, "index pair with j = k");

        const SymVector &y = basis[j_pos];
        const SymVector &x = basis[k_pos];
        RatFunction c = sym_pairing(vars, sym_bracket(algebra, vars, x, y));
        if (c.is_zero())
            throw Error(ErrorKind::inconsistent_index_set,
                        "forced step (" + std::to_string(j_label) + "," +
                            std::to_string(k_label) + ") has c identically zero");
        P = P * c.num();

        std::vector<SymVector> next_basis;
        std::vector<unsigned> next_labels;
        for (std::size_t p = 0; p < basis.size(); ++p) {
            if (p == k_pos) continue;
            RatFunction coeff =
                sym_pairing(vars, sym_bracket(algebra, vars, basis[p], y)) / c;
            if (coeff.is_zero()) {
                next_basis.push_back(basis[p]);
            } else {
                SymVector nb = basis[p];
                for (std::size_t t = 0; t < n; ++t)
                    nb[t] = nb[t] - coeff * x[t];
                next_basis.push_back(std::move(nb));
            }
            next_labels.push_back(labels[p]);
        }
        basis = std::move(next_basis);
        labels = std::move(next_labels);
    }

    return LayerDescription{I, P.content_normalized(), I.flattened()};
}

bool in_pukanszky_section(const Covector &l, const IndexSet &I) {
    for (unsigned label : I.flattened())
        if (!l.coords()[label - 1].is_zero()) return false;
    return index_of(l) == I;
}

std::vector<DiscoveredLayer> enumerate_layers(const AlgebraPtr &algebra,
                                              std::size_t sample_budget,
                                              std::uint64_t seed, unsigned threads) {
    if (sample_budget < 1)
        throw Error(ErrorKind::arity_mismatch, "sample budget must be >= 1");
    const std::size_t n = algebra->dim();

    // The full coordinate stream is drawn up front so results do not depend
    // on how samples are distributed over threads.
    SplitMix64 rng(seed);
    std::vector<Covector> samples;
    samples.reserve(sample_budget);
    for (std::size_t s = 0; s < sample_budget; ++s)
        samples.emplace_back(algebra, rng.nonzero_coords(n));

    std::vector<IndexSet> sample_index(sample_budget, IndexSet{});
    if (threads <= 1 || sample_budget < 2) {
        for (std::size_t s = 0; s < sample_budget; ++s)
            sample_index[s] = index_of(samples[s]);
    } else {
        unsigned nt = std::min<unsigned>(threads, sample_budget);
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t s = t; s < sample_budget; s += nt)
                    sample_index[s] = index_of(samples[s]);
            });
        for (auto &th : pool) th.join();
    }

    std::vector<DiscoveredLayer> discovered; // in discovery order
    auto known = [&](const IndexSet &I) {
        for (const auto &d : discovered)
            if (d.index_set == I) return true;
        return false;
    };
    auto add = [&](const IndexSet &I, const Covector &w) {
        discovered.push_back(DiscoveredLayer{I, w, layer_polynomial(algebra, I).P});
    };

    for (std::size_t s = 0; s < sample_budget; ++s)
        if (!known(sample_index[s])) add(sample_index[s], samples[s]);

    // Degeneration probes: within each discovered layer, zero out witness
    // coordinates named in P_I; any strictly smaller layer reached this way
    // is added with its degenerate witness, recursively.
    for (std::size_t head = 0; head < discovered.size(); ++head) {
        const DiscoveredLayer layer = discovered[head];
        std::vector<unsigned> named_labels;
        for (std::size_t v = 0; v < n; ++v)
            if (layer.P.uses_var(v)) named_labels.push_back(static_cast<unsigned>(v));
        if (named_labels.empty() || named_labels.size() > 16) continue;
        for (std::uint64_t mask = 1; mask < (1ULL << named_labels.size()); ++mask) {
            RatVector coords = layer.witness.coords();
            for (std::size_t b = 0; b < named_labels.size(); ++b)
                if (mask & (1ULL << b)) coords[named_labels[b]] = Rational(0);
            Covector degenerate(algebra, std::move(coords));
            IndexSet I = index_of(degenerate);
            if (!known(I)) add(I, degenerate);
        }
    }

    std::stable_sort(discovered.begin(), discovered.end(),
                     [](const DiscoveredLayer &a, const DiscoveredLayer &b) {
                         return lex_compare(a.index_set, b.index_set) > 0;
                     });
    return discovered;
}

} // namespace nilorbit
