#pragma once

#include "mtt/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

// Seeded deterministic generation. mt19937_64 has a fully specified output
// sequence and the bounded draws below use plain modulo, so identical seeds
// give bit-identical instances on every platform.

namespace mtt {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent stream for trial `index` of a suite seeded by `seed`;
    /// lets trials run in any order or in parallel with identical results.
    static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 of the pair, so neighboring trials decorrelate.
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t next() { return eng_(); }

    /// Uniform draw in [lo, hi], inclusive.
    int uniform(int lo, int hi) {
        if (hi <= lo)
            return lo;
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (next() & 1) != 0; }

  private:
    std::mt19937_64 eng_;
};

/// Product of random integer shears and sign flips; unimodular, so the
/// inverse stays integral and conjugated differentials keep small entries.
inline Mat random_unimodular(int n, Rng& rng) {
    Mat g = Mat::identity(n);
    const int steps = 2 * n;
    for (int s = 0; s < steps && n > 1; ++s) {
        const int i = rng.uniform(0, n - 1);
        int j = rng.uniform(0, n - 2);
        if (j >= i)
            ++j;
        const int c = rng.coin() ? 1 : -1;
        for (int col = 0; col < n; ++col)
            g(i, col) += Rational(c) * g(j, col);
    }
    for (int i = 0; i < n; ++i)
        if (rng.coin())
            for (int col = 0; col < n; ++col)
                g(i, col) = -g(i, col);
    return g;
}

struct ComplexCaps {
    int min_degree = -2;
    int max_degree = 2;
    int max_dim = 3;
};

struct RandomComplex {
    BoundedComplex complex;
    std::map<int, int> expected_homology;
};

/// Random bounded complex with d.d = 0 by construction: a split complex
/// (dots plus two-term acyclic intervals) conjugated degreewise by random
/// unimodular matrices. The dot counts are the homology, recorded so callers
/// can cross-check the rank route.
inline RandomComplex random_complex_with_homology(Rng& rng, const ComplexCaps& caps) {
    // Sample a sub-span of the allowed degree window so instance shapes vary.
    const int lo = rng.uniform(caps.min_degree, caps.max_degree);
    const int hi = rng.uniform(lo, caps.max_degree);
    std::map<int, int> dots, intervals;  // intervals[n] spans degrees n, n+1
    for (int n = lo; n <= hi; ++n) {
        intervals[n] = (n < hi) ? rng.uniform(0, caps.max_dim / 2) : 0;
        const int used = intervals[n] + (n > lo ? intervals[n - 1] : 0);
        dots[n] = rng.uniform(0, std::max(0, caps.max_dim - used));
    }
    std::map<int, int> dims;
    for (int n = lo; n <= hi; ++n) {
        const int d = dots[n] + intervals[n] + (n > lo ? intervals[n - 1] : 0);
        if (d > 0)
            dims[n] = d;
    }
    // Split differential: interval starts at n map identically onto interval
    // ends at n+1. Basis order per degree: [dots | starts | ends].
    std::map<int, Mat> diffs;
    for (int n = lo; n < hi; ++n) {
        const int dn = dims.count(n) ? dims.at(n) : 0;
        const int dn1 = dims.count(n + 1) ? dims.at(n + 1) : 0;
        if (dn == 0 || dn1 == 0 || intervals[n] == 0)
            continue;
        Mat d(dn1, dn);
        const int col0 = dots[n];
        const int row0 = dots[n + 1] + intervals[n + 1];
        for (int t = 0; t < intervals[n]; ++t)
            d(row0 + t, col0 + t) = 1;
        diffs[n] = std::move(d);
    }
    BoundedComplex split(dims, diffs);
    // Conjugate: d' = g_(n+1) d g_n^(-1).
    std::map<int, Mat> g, ginv;
    for (const auto& [n, d] : split.dims()) {
        g[n] = random_unimodular(d, rng);
        ginv[n] = inverse(g[n]);
    }
    std::map<int, Mat> twisted;
    for (const auto& [n, d] : split.diffs()) {
        if (d.is_zero())
            continue;
        twisted[n] = matmul(g.at(n + 1), matmul(d, ginv.at(n)));
    }
    RandomComplex out;
    out.complex = BoundedComplex(split.dims(), std::move(twisted));
    for (int n = lo; n <= hi; ++n)
        if (dots[n] > 0)
            out.expected_homology[n] = dots[n];
    return out;
}

inline BoundedComplex random_complex(Rng& rng, const ComplexCaps& caps) {
    return random_complex_with_homology(rng, caps).complex;
}

/// Random chain map X -> Y: a small-integer combination of a basis of the
/// exact solution space of the chain-map equations.
inline ChainMap random_chain_map(const BoundedComplex& x, const BoundedComplex& y, Rng& rng) {
    const detail::HomSystems sys(x, y);
    const Mat basis = kernel_basis(sys.chain_condition);
    std::vector<Rational> flat(sys.maps.total);
    for (int c = 0; c < basis.cols(); ++c) {
        const int coeff = rng.uniform(-2, 2);
        if (coeff == 0)
            continue;
        for (int r = 0; r < basis.rows(); ++r)
            if (basis(r, c) != 0)
                flat[r] += Rational(coeff) * basis(r, c);
    }
    return sys.unflatten(x, y, flat);
}

}  // namespace mtt
