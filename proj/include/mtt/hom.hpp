#pragma once

#include "mtt/complex.hpp"
#include "mtt/laurent.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

// Hom complexes. Since every object here is a bounded complex of
// finite-dimensional rational vector spaces, the plain Hom complex computes
// derived Hom on the nose; no resolutions are ever needed.
//
// Convention: Hom(X,Y)^n = (+)_i Hom(X^i, Y^(i+n)) with differential
// (Df)^i = d_Y f^i - (-1)^n f^(i+1) d_X. Components are vectorized row-major,
// blocks ordered by ascending i.

namespace mtt {

namespace detail {

/// Block layout of Hom(X,Y)^n over the X-degree i.
struct HomLayout {
    std::map<int, std::vector<std::pair<int, int>>> blocks;  // n -> [(i, offset)]
    std::map<int, int> dims;

    HomLayout(const BoundedComplex& x, const BoundedComplex& y) {
        for (const auto& [i, dx] : x.dims())
            for (const auto& [j, dy] : y.dims()) {
                const int n = j - i;
                blocks[n].push_back({i, dims[n]});
                dims[n] += dx * dy;
            }
        // Maps ordered by X-degree: j - i iterates y-major above, so re-sort.
        for (auto& [n, v] : blocks) {
            (void)n;
            std::sort(v.begin(), v.end());
        }
        // Offsets must follow the sorted order.
        for (auto& [n, v] : blocks) {
            int off = 0;
            for (auto& [i, o] : v) {
                o = off;
                off += x.dim(i) * y.dim(i + n);
            }
        }
    }

    int offset_of(int n, int i) const {
        auto it = blocks.find(n);
        if (it == blocks.end())
            return -1;
        for (const auto& [bi, off] : it->second)
            if (bi == i)
                return off;
        return -1;
    }
};

}  // namespace detail

/// The Hom complex of X and Y; computes RHom in this model.
inline BoundedComplex hom_complex(const BoundedComplex& x, const BoundedComplex& y) {
    const detail::HomLayout layout(x, y);
    std::map<int, Mat> diffs;
    for (const auto& [n, total] : layout.dims) {
        if (!layout.dims.count(n + 1))
            continue;
        Mat block(layout.dims.at(n + 1), total);
        auto place = [&](const Mat& m, int row_off, int col_off) {
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    if (m(r, c) != 0)
                        block(row_off + r, col_off + c) = m(r, c);
        };
        for (const auto& [i, off] : layout.blocks.at(n)) {
            // d_Y postcomposition: block (n, i) -> (n+1, i).
            if (y.dim(i + n + 1) > 0) {
                const int tgt = layout.offset_of(n + 1, i);
                if (tgt >= 0)
                    place(kron(y.diff(i + n), Mat::identity(x.dim(i))), tgt, off);
            }
            // -(-1)^n d_X precomposition: block (n, i) -> (n+1, i-1).
            if (x.dim(i - 1) > 0 && y.dim(i + n) > 0) {
                const int tgt = layout.offset_of(n + 1, i - 1);
                if (tgt >= 0) {
                    Mat part = kron(Mat::identity(y.dim(i + n)), x.diff(i - 1).transpose());
                    place(n % 2 == 0 ? -part : part, tgt, off);
                }
            }
        }
        diffs[n] = std::move(block);
    }
    return BoundedComplex(layout.dims, std::move(diffs));
}

/// Precomposition with g : X' -> X, as a chain map
/// Hom(X, Y) -> Hom(X', Y). This is the contravariant leg of the
/// interaction profunctor.
inline ChainMap precompose_map(const ChainMap& g, const BoundedComplex& y) {
    const BoundedComplex& xprime = g.source();
    const BoundedComplex& x = g.target();
    const BoundedComplex hsrc = hom_complex(x, y);
    const BoundedComplex htgt = hom_complex(xprime, y);
    const detail::HomLayout src_layout(x, y), tgt_layout(xprime, y);
    std::map<int, Mat> comps;
    for (const auto& [n, total] : src_layout.dims) {
        if (htgt.dim(n) == 0)
            continue;
        Mat m(htgt.dim(n), total);
        for (const auto& [i, off] : src_layout.blocks.at(n)) {
            const int tgt = tgt_layout.offset_of(n, i);
            if (tgt < 0)
                continue;
            const Mat part = kron(Mat::identity(y.dim(i + n)), g.comp(i).transpose());
            for (int r = 0; r < part.rows(); ++r)
                for (int c = 0; c < part.cols(); ++c)
                    if (part(r, c) != 0)
                        m(tgt + r, off + c) = part(r, c);
        }
        comps[n] = std::move(m);
    }
    return ChainMap(hsrc, htgt, std::move(comps));
}

/// Postcomposition with h : Y -> Y', as a chain map
/// Hom(X, Y) -> Hom(X, Y'). The covariant leg.
inline ChainMap postcompose_map(const BoundedComplex& x, const ChainMap& h) {
    const BoundedComplex& y = h.source();
    const BoundedComplex& yprime = h.target();
    const BoundedComplex hsrc = hom_complex(x, y);
    const BoundedComplex htgt = hom_complex(x, yprime);
    const detail::HomLayout src_layout(x, y), tgt_layout(x, yprime);
    std::map<int, Mat> comps;
    for (const auto& [n, total] : src_layout.dims) {
        if (htgt.dim(n) == 0)
            continue;
        Mat m(htgt.dim(n), total);
        for (const auto& [i, off] : src_layout.blocks.at(n)) {
            const int tgt = tgt_layout.offset_of(n, i);
            if (tgt < 0)
                continue;
            const Mat part = kron(h.comp(i + n), Mat::identity(x.dim(i)));
            for (int r = 0; r < part.rows(); ++r)
                for (int c = 0; c < part.cols(); ++c)
                    if (part(r, c) != 0)
                        m(tgt + r, off + c) = part(r, c);
        }
        comps[n] = std::move(m);
    }
    return ChainMap(hsrc, htgt, std::move(comps));
}

/// Cohomology of RHom(X, Y), degree by degree.
inline std::map<int, int> rhom_cohomology(const BoundedComplex& x, const BoundedComplex& y) {
    return homology_dims(hom_complex(x, y));
}

/// P(q) = sum_m dim H^m(RHom(X, Y)) q^m. Coefficients are dimensions, hence
/// nonnegative by construction.
inline LaurentPoly poincare(const BoundedComplex& x, const BoundedComplex& y) {
    LaurentPoly p;
    for (const auto& [m, d] : rhom_cohomology(x, y))
        p.set(m, d);
    return p;
}

}  // namespace mtt
