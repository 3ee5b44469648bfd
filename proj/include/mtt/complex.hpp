#pragma once

#include "mtt/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Bounded cochain complexes of finite-dimensional rational vector spaces.
//
// Conventions, fixed once for the whole engine and never configurable:
//   * cohomological grading, d^n : X^n -> X^(n+1);
//   * shift      X[k]^n = X^(n+k),  d_{X[k]} = (-1)^k d_X;
//   * cone(f)^n  = X^(n+1) (+) Y^n, d = [[-d_X, 0], [f, d_Y]];
//   * tensor     (K (x) X)^n = (+)_{p+q=n} K^p (x) X^q,
//                d(k (x) x) = d_K k (x) x + (-1)^p k (x) d_X x.
// Every sign-sensitive identity in the test suites is pinned to this set.

namespace mtt {

class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A degree-localized validation failure.
struct Violation {
    int degree = 0;
    std::string message;
};

/// Bounded cochain complex. `dims` holds only positive entries; `diffs` holds
/// d^n exactly for those n where both endpoints have positive dimension
/// (explicit zero matrices are kept so equality is structural).
class BoundedComplex {
  public:
    BoundedComplex() = default;

    /// Normalizing constructor: drops non-positive dimensions, checks
    /// differential shapes, materializes absent differentials as zero.
    /// d.d = 0 is the business of validate(), not of construction.
    BoundedComplex(std::map<int, int> dims, std::map<int, Mat> diffs) {
        for (const auto& [n, d] : dims)
            if (d > 0)
                dims_[n] = d;
        for (const auto& [n, m] : diffs) {
            const int src = dim(n), tgt = dim(n + 1);
            if (src == 0 || tgt == 0) {
                if (m.rows() != tgt || m.cols() != src)
                    if (!m.is_zero())
                        throw ShapeError("differential at degree " + std::to_string(n) +
                                         " maps into or out of an empty degree");
                continue;
            }
            if (m.rows() != tgt || m.cols() != src)
                throw ShapeError("differential at degree " + std::to_string(n) + " has shape " +
                                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                 ", expected " + std::to_string(tgt) + "x" + std::to_string(src));
            diffs_[n] = m;
        }
        for (const auto& [n, d] : dims_) {
            (void)d;
            if (dim(n + 1) > 0 && !diffs_.count(n))
                diffs_[n] = Mat::zero(dim(n + 1), dim(n));
        }
    }

    static BoundedComplex zero_object() { return BoundedComplex(); }

    /// One copy of the base field in a single degree.
    static BoundedComplex point(int degree, int dimension = 1) {
        if (dimension <= 0)
            return BoundedComplex();
        return BoundedComplex({{degree, dimension}}, {});
    }

    const std::map<int, int>& dims() const { return dims_; }
    const std::map<int, Mat>& diffs() const { return diffs_; }

    int dim(int n) const {
        auto it = dims_.find(n);
        return it == dims_.end() ? 0 : it->second;
    }

    /// d^n with the right shape, zero when absent.
    Mat diff(int n) const {
        auto it = diffs_.find(n);
        if (it != diffs_.end())
            return it->second;
        return Mat::zero(dim(n + 1), dim(n));
    }

    bool is_zero_object() const { return dims_.empty(); }
    int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

    int total_dim() const {
        int t = 0;
        for (const auto& [n, d] : dims_)
            t += d;
        return t;
    }

    bool operator==(const BoundedComplex& other) const {
        return dims_ == other.dims_ && diffs_ == other.diffs_;
    }
    bool operator!=(const BoundedComplex& other) const { return !(*this == other); }

  private:
    std::map<int, int> dims_;
    std::map<int, Mat> diffs_;
};

/// d.d = 0 and shape consistency; reports the first violating degree.
inline std::optional<Violation> validate(const BoundedComplex& x) {
    for (const auto& [n, m] : x.diffs()) {
        if (m.rows() != x.dim(n + 1) || m.cols() != x.dim(n))
            return Violation{n, "differential shape " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " does not match dims " +
                                    std::to_string(x.dim(n + 1)) + "x" + std::to_string(x.dim(n))};
    }
    for (const auto& [n, m] : x.diffs()) {
        if (x.dim(n + 2) == 0)
            continue;
        if (!matmul(x.diff(n + 1), m).is_zero())
            return Violation{n, "d.d != 0 between degrees " + std::to_string(n) + " and " +
                                    std::to_string(n + 2)};
    }
    return std::nullopt;
}

/// Degreewise map of complexes. `comps` carries f^n exactly where both
/// endpoints have positive dimension.
class ChainMap {
  public:
    ChainMap() = default;
    ChainMap(BoundedComplex source, BoundedComplex target, std::map<int, Mat> comps)
        : source_(std::move(source)), target_(std::move(target)) {
        for (const auto& [n, m] : comps) {
            const int s = source_.dim(n), t = target_.dim(n);
            if (s == 0 || t == 0) {
                if (!m.is_zero())
                    throw ShapeError("chain map component at empty degree " + std::to_string(n));
                continue;
            }
            if (m.rows() != t || m.cols() != s)
                throw ShapeError("chain map component at degree " + std::to_string(n) +
                                 " has wrong shape");
            comps_[n] = m;
        }
        for (const auto& [n, d] : source_.dims()) {
            (void)d;
            if (target_.dim(n) > 0 && !comps_.count(n))
                comps_[n] = Mat::zero(target_.dim(n), source_.dim(n));
        }
    }

    static ChainMap identity(const BoundedComplex& x) {
        std::map<int, Mat> comps;
        for (const auto& [n, d] : x.dims())
            comps[n] = Mat::identity(d);
        return ChainMap(x, x, std::move(comps));
    }

    static ChainMap zero(const BoundedComplex& source, const BoundedComplex& target) {
        return ChainMap(source, target, {});
    }

    const BoundedComplex& source() const { return source_; }
    const BoundedComplex& target() const { return target_; }
    const std::map<int, Mat>& comps() const { return comps_; }

    Mat comp(int n) const {
        auto it = comps_.find(n);
        if (it != comps_.end())
            return it->second;
        return Mat::zero(target_.dim(n), source_.dim(n));
    }

    bool operator==(const ChainMap& other) const {
        return source_ == other.source_ && target_ == other.target_ && comps_ == other.comps_;
    }

  private:
    BoundedComplex source_, target_;
    std::map<int, Mat> comps_;
};

/// Commuting squares d_Y f = f d_X, exactly; first bad degree otherwise.
inline std::optional<Violation> validate_chain_map(const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    int lo = std::min(x.is_zero_object() ? 0 : x.min_degree(), y.is_zero_object() ? 0 : y.min_degree());
    int hi = std::max(x.is_zero_object() ? 0 : x.max_degree(), y.is_zero_object() ? 0 : y.max_degree());
    for (int n = lo; n <= hi; ++n) {
        const Mat lhs = matmul(y.diff(n), f.comp(n));
        const Mat rhs = matmul(f.comp(n + 1), x.diff(n));
        if (lhs != rhs)
            return Violation{n, "chain map square fails between degrees " + std::to_string(n) +
                                    " and " + std::to_string(n + 1)};
    }
    return std::nullopt;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source()))
        throw ShapeError("chain map composition: middle objects differ");
    std::map<int, Mat> comps;
    for (const auto& [n, d] : f.source().dims()) {
        (void)d;
        if (g.target().dim(n) > 0)
            comps[n] = matmul(g.comp(n), f.comp(n));
    }
    return ChainMap(f.source(), g.target(), std::move(comps));
}

inline ChainMap add(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw ShapeError("chain map sum: endpoint mismatch");
    std::map<int, Mat> comps;
    for (const auto& [n, m] : f.comps())
        comps[n] = m + g.comp(n);
    return ChainMap(f.source(), f.target(), std::move(comps));
}

/// X[k] with X[k]^n = X^(n+k) and differential (-1)^k d_X.
inline BoundedComplex shift(const BoundedComplex& x, int k) {
    std::map<int, int> dims;
    std::map<int, Mat> diffs;
    for (const auto& [n, d] : x.dims())
        dims[n - k] = d;
    for (const auto& [n, m] : x.diffs())
        diffs[n - k] = (k % 2 == 0) ? m : -m;
    return BoundedComplex(std::move(dims), std::move(diffs));
}

/// f[k] : X[k] -> Y[k], components reindexed, no sign.
inline ChainMap shift(const ChainMap& f, int k) {
    std::map<int, Mat> comps;
    for (const auto& [n, m] : f.comps())
        comps[n - k] = m;
    return ChainMap(shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

inline BoundedComplex direct_sum(const BoundedComplex& x, const BoundedComplex& y) {
    std::map<int, int> dims;
    std::map<int, Mat> diffs;
    for (const auto& [n, d] : x.dims())
        dims[n] += d;
    for (const auto& [n, d] : y.dims())
        dims[n] += d;
    for (const auto& [n, d] : dims) {
        (void)d;
        if (dims.count(n + 1)) {
            Mat block(dims.at(n + 1), dims.at(n));
            const Mat dx = x.diff(n), dy = y.diff(n);
            for (int r = 0; r < dx.rows(); ++r)
                for (int c = 0; c < dx.cols(); ++c)
                    block(r, c) = dx(r, c);
            for (int r = 0; r < dy.rows(); ++r)
                for (int c = 0; c < dy.cols(); ++c)
                    block(x.dim(n + 1) + r, x.dim(n) + c) = dy(r, c);
            diffs[n] = std::move(block);
        }
    }
    return BoundedComplex(std::move(dims), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Cones and triangles

struct TriangleWitness {
    enum class Kind { cone, qiso };
    Kind kind = Kind::cone;
    /// For Kind::qiso: an explicit quasi-isomorphism cone(map_a) -> third.
    std::optional<ChainMap> comparison;
    std::string note;
};

/// Candidate distinguished triangle first -> second -> third -> first[1].
/// Distinguishedness is checkable data, not a flag: either `third` is
/// literally cone(map_a) with the canonical maps, or `witness.comparison`
/// holds an explicit quasi-isomorphism from that cone.
struct Triangle {
    BoundedComplex first, second, third;
    ChainMap map_a;  // first  -> second
    ChainMap map_b;  // second -> third
    ChainMap map_c;  // third  -> first[1]
    TriangleWitness witness;
};

/// cone(f)^n = X^(n+1) (+) Y^n with d = [[-d_X, 0], [f, d_Y]].
inline BoundedComplex cone_complex(const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    std::map<int, int> dims;
    for (const auto& [n, d] : x.dims())
        dims[n - 1] += d;
    for (const auto& [n, d] : y.dims())
        dims[n] += d;
    std::map<int, Mat> diffs;
    for (const auto& [n, d] : dims) {
        (void)d;
        if (!dims.count(n + 1))
            continue;
        Mat block(dims.at(n + 1), dims.at(n));
        const Mat dx = x.diff(n + 1);  // X^(n+1) -> X^(n+2)
        const Mat fy = f.comp(n + 1);  // X^(n+1) -> Y^(n+1)
        const Mat dy = y.diff(n);      // Y^n     -> Y^(n+1)
        for (int r = 0; r < dx.rows(); ++r)
            for (int c = 0; c < dx.cols(); ++c)
                block(r, c) = -dx(r, c);
        for (int r = 0; r < fy.rows(); ++r)
            for (int c = 0; c < fy.cols(); ++c)
                block(x.dim(n + 2) + r, c) = fy(r, c);
        for (int r = 0; r < dy.rows(); ++r)
            for (int c = 0; c < dy.cols(); ++c)
                block(x.dim(n + 2) + r, x.dim(n + 1) + c) = dy(r, c);
        diffs[n] = std::move(block);
    }
    return BoundedComplex(std::move(dims), std::move(diffs));
}

/// The canonical cone triangle X -> Y -> cone(f) -> X[1].
inline Triangle cone_triangle(const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    BoundedComplex c = cone_complex(f);

    std::map<int, Mat> incl;  // Y^n -> X^(n+1) (+) Y^n
    for (const auto& [n, d] : y.dims()) {
        Mat m(c.dim(n), d);
        for (int i = 0; i < d; ++i)
            m(x.dim(n + 1) + i, i) = 1;
        incl[n] = std::move(m);
    }
    std::map<int, Mat> proj;  // X^(n+1) (+) Y^n -> X[1]^n = X^(n+1)
    for (const auto& [n, d] : c.dims()) {
        (void)d;
        const int xd = x.dim(n + 1);
        if (xd == 0)
            continue;
        Mat m(xd, c.dim(n));
        for (int i = 0; i < xd; ++i)
            m(i, i) = 1;
        proj[n] = std::move(m);
    }

    Triangle t;
    t.first = x;
    t.second = y;
    t.third = c;
    t.map_a = f;
    t.map_b = ChainMap(y, c, std::move(incl));
    t.map_c = ChainMap(c, shift(x, 1), std::move(proj));
    t.witness.kind = TriangleWitness::Kind::cone;
    t.witness.note = "canonical cone";
    return t;
}

/// The null homotopy of map_b . map_a for a canonical cone triangle:
/// h^n = (id, 0) : X^n -> cone(f)^(n-1), so that d h + h d = incl . f.
inline std::map<int, Mat> cone_composite_null_homotopy(const Triangle& t) {
    const BoundedComplex& x = t.first;
    std::map<int, Mat> h;
    for (const auto& [n, d] : x.dims()) {
        Mat m(t.third.dim(n - 1), d);
        for (int i = 0; i < d; ++i)
            m(i, i) = 1;
        h[n] = std::move(m);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Tensor totalization

/// Total complex of K (x) X, blocks ordered by ascending K-degree, bases
/// ordered K-major within a block.
inline BoundedComplex tensor_total(const BoundedComplex& k, const BoundedComplex& x) {
    std::map<int, int> dims;
    // Per-degree block layout: (p, offset) with p the K-degree.
    std::map<int, std::vector<std::pair<int, int>>> layout;
    for (const auto& [p, dk] : k.dims())
        for (const auto& [q, dx] : x.dims()) {
            const int n = p + q;
            layout[n].push_back({p, dims[n]});
            dims[n] += dk * dx;
        }
    auto offset_of = [&](int n, int p) -> int {
        for (const auto& [bp, off] : layout[n])
            if (bp == p)
                return off;
        return -1;
    };
    std::map<int, Mat> diffs;
    for (const auto& [n, total] : dims) {
        if (!dims.count(n + 1))
            continue;
        Mat block(dims.at(n + 1), total);
        auto place = [&](const Mat& m, int row_off, int col_off) {
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    if (m(r, c) != 0)
                        block(row_off + r, col_off + c) = m(r, c);
        };
        for (const auto& [p, off] : layout[n]) {
            const int q = n - p;
            // d_K (x) id : block (p, q) -> (p+1, q)
            if (k.dim(p + 1) > 0) {
                const int tgt = offset_of(n + 1, p + 1);
                if (tgt >= 0)
                    place(kron(k.diff(p), Mat::identity(x.dim(q))), tgt, off);
            }
            // (-1)^p id (x) d_X : block (p, q) -> (p, q+1)
            if (x.dim(q + 1) > 0) {
                const int tgt = offset_of(n + 1, p);
                if (tgt >= 0) {
                    Mat part = kron(Mat::identity(k.dim(p)), x.diff(q));
                    place(p % 2 == 0 ? part : -part, tgt, off);
                }
            }
        }
        diffs[n] = std::move(block);
    }
    return BoundedComplex(std::move(dims), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Homology

/// dim H^n = dim X^n - rank d^n - rank d^(n-1), zero entries dropped.
/// Each differential is ranked once.
inline std::map<int, int> homology_dims(const BoundedComplex& x) {
    std::map<int, int> rank_of;
    for (const auto& [n, m] : x.diffs())
        rank_of[n] = rank(m);
    auto rk = [&](int n) {
        auto it = rank_of.find(n);
        return it == rank_of.end() ? 0 : it->second;
    };
    std::map<int, int> h;
    for (const auto& [n, d] : x.dims()) {
        const int v = d - rk(n) - rk(n - 1);
        if (v != 0)
            h[n] = v;
    }
    return h;
}

inline int euler_characteristic(const BoundedComplex& x) {
    int chi = 0;
    for (const auto& [n, d] : homology_dims(x))
        chi += (n % 2 == 0) ? d : -d;
    return chi;
}

/// Chosen presentation of H^n: an independent basis of the boundary space
/// and a set of cycle representatives completing it. Deterministic, so two
/// computations over the same complex land in the same basis.
struct HomologyBasis {
    Mat boundaries;  // dim(n) x rank(d^(n-1)), columns a basis of B^n
    Mat reps;        // dim(n) x h, columns represent a basis of H^n
};

inline HomologyBasis homology_basis(const BoundedComplex& x, int n) {
    HomologyBasis out;
    out.boundaries = column_space_basis(x.diff(n - 1));
    const Mat cycles = kernel_basis(x.diff(n));
    detail::SpanTracker tracker(x.dim(n));
    for (int c = 0; c < out.boundaries.cols(); ++c)
        tracker.add(out.boundaries.col(c));
    std::vector<int> kept;
    for (int c = 0; c < cycles.cols(); ++c)
        if (tracker.add(cycles.col(c)))
            kept.push_back(c);
    Mat reps(x.dim(n), static_cast<int>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
        for (int r = 0; r < x.dim(n); ++r)
            reps(r, static_cast<int>(j)) = cycles(r, kept[j]);
    out.reps = std::move(reps);
    return out;
}

/// Coordinates of the classes of the cycle columns of `v` in the basis
/// `hb.reps`, batched through one elimination.
inline Mat class_coordinates(const HomologyBasis& hb, const Mat& cycles) {
    const Mat system = hstack(hb.boundaries, hb.reps);
    const auto solutions = solve_many(system, cycles);
    Mat out(hb.reps.cols(), cycles.cols());
    for (int j = 0; j < cycles.cols(); ++j) {
        if (!solutions[j])
            throw ValidationError("vector is not a cycle of the expected complex");
        for (int i = 0; i < out.rows(); ++i)
            out(i, j) = (*solutions[j])[hb.boundaries.cols() + i];
    }
    return out;
}

/// Matrix of H^n(f) in the deterministic homology bases of source and target.
inline Mat induced_on_homology(const ChainMap& f, int n, const HomologyBasis& src,
                               const HomologyBasis& tgt) {
    return class_coordinates(tgt, matmul(f.comp(n), src.reps));
}

/// True iff f induces isomorphisms on cohomology in every degree, decided by
/// rank conditions (rank of the induced map against both homology dims).
inline bool is_quasi_iso(const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    const std::map<int, int> hx = homology_dims(x);
    const std::map<int, int> hy = homology_dims(y);
    std::map<int, char> degrees;
    for (const auto& [n, d] : hx)
        (void)d, degrees[n] = 0;
    for (const auto& [n, d] : hy)
        (void)d, degrees[n] = 0;
    for (const auto& [n, unused] : degrees) {
        (void)unused;
        const int hxn = hx.count(n) ? hx.at(n) : 0;
        const int hyn = hy.count(n) ? hy.at(n) : 0;
        if (hxn != hyn)
            return false;
        if (hxn == 0)
            continue;
        const Mat zx = kernel_basis(x.diff(n));
        const Mat by = column_space_basis(y.diff(n - 1));
        const Mat fz = matmul(f.comp(n), zx);
        const int induced_rank = rank(hstack(by, fz)) - by.cols();
        if (induced_rank != hxn)
            return false;
    }
    return true;
}

/// The homology of X as a zero-differential complex, together with a chain
/// projection X -> H(X) inducing the identity on cohomology. This is the
/// concrete form of semisimplicity over a field.
inline std::pair<BoundedComplex, ChainMap> homology_model(const BoundedComplex& x) {
    std::map<int, int> hdims = homology_dims(x);
    BoundedComplex h(hdims, {});
    std::map<int, Mat> proj;
    for (const auto& [n, hd] : hdims) {
        const HomologyBasis hb = homology_basis(x, n);
        // Extend [boundaries-basis | reps] to a basis of X^n by standard
        // vectors, invert, and keep the rows that read off rep coordinates.
        detail::SpanTracker tracker(x.dim(n));
        std::vector<int> bcols;
        for (int c = 0; c < hb.boundaries.cols(); ++c)
            if (tracker.add(hb.boundaries.col(c)))
                bcols.push_back(c);
        Mat basis(x.dim(n), 0);
        {
            Mat bsel(x.dim(n), static_cast<int>(bcols.size()));
            for (std::size_t j = 0; j < bcols.size(); ++j)
                for (int r = 0; r < x.dim(n); ++r)
                    bsel(r, static_cast<int>(j)) = hb.boundaries(r, bcols[j]);
            basis = hstack(bsel, hb.reps);
        }
        for (int c = 0; c < hb.reps.cols(); ++c)
            tracker.add(hb.reps.col(c));
        for (int e = 0; e < x.dim(n) && basis.cols() < x.dim(n); ++e) {
            std::vector<Rational> unit(x.dim(n));
            unit[e] = 1;
            if (tracker.add(unit)) {
                Mat col(x.dim(n), 1);
                col(e, 0) = 1;
                basis = hstack(basis, col);
            }
        }
        const Mat minv = inverse(basis);
        Mat p(hd, x.dim(n));
        const int rep_row0 = static_cast<int>(bcols.size());
        for (int r = 0; r < hd; ++r)
            for (int c = 0; c < x.dim(n); ++c)
                p(r, c) = minv(rep_row0 + r, c);
        proj[n] = std::move(p);
    }
    ChainMap pmap(x, h, std::move(proj));
    return {std::move(h), std::move(pmap)};
}

// ---------------------------------------------------------------------------
// Homotopy classes of chain maps, by direct linear systems

namespace detail {

/// Flat indexing of the graded space of degree-0 maps {f^n : X^n -> Y^n}
/// (row-major within each component).
struct MapLayout {
    std::vector<int> degrees;
    std::map<int, int> offset;
    int total = 0;

    MapLayout(const BoundedComplex& x, const BoundedComplex& y, int shift_by) {
        for (const auto& [n, dx] : x.dims()) {
            const int dy = y.dim(n + shift_by);
            if (dy > 0) {
                degrees.push_back(n);
                offset[n] = total;
                total += dx * dy;
            }
        }
    }
};

struct HomSystems {
    MapLayout maps;       // unknowns f^n : X^n -> Y^n
    MapLayout homotopies; // unknowns h^n : X^n -> Y^(n-1)
    Mat chain_condition;  // T f = 0  <=>  f is a chain map
    Mat homotopy_to_map;  // f = S h  <=>  f = d_Y h + h d_X

    HomSystems(const BoundedComplex& x, const BoundedComplex& y)
        : maps(x, y, 0), homotopies(x, y, -1) {
        // Equations d_Y^n f^n - f^(n+1) d_X^n = 0, one row per entry of a
        // map X^n -> Y^(n+1).
        int eq_total = 0;
        std::map<int, int> eq_offset;
        for (const auto& [n, dx] : x.dims()) {
            if (y.dim(n + 1) > 0) {
                eq_offset[n] = eq_total;
                eq_total += dx * y.dim(n + 1);
            }
        }
        chain_condition = Mat::zero(eq_total, maps.total);
        for (const auto& [n, eoff] : eq_offset) {
            const int dx = x.dim(n), dyn1 = y.dim(n + 1);
            const Mat dy = y.diff(n);
            const Mat dxm = x.diff(n);
            if (maps.offset.count(n)) {
                const int foff = maps.offset.at(n);
                const int dyn = y.dim(n);
                for (int r = 0; r < dyn1; ++r)
                    for (int c = 0; c < dx; ++c)
                        for (int t = 0; t < dyn; ++t)
                            if (dy(r, t) != 0)
                                chain_condition(eoff + r * dx + c, foff + t * dx + c) += dy(r, t);
            }
            if (maps.offset.count(n + 1)) {
                const int foff = maps.offset.at(n + 1);
                const int dxn1 = x.dim(n + 1);
                for (int r = 0; r < dyn1; ++r)
                    for (int c = 0; c < dx; ++c)
                        for (int t = 0; t < dxn1; ++t)
                            if (dxm(t, c) != 0)
                                chain_condition(eoff + r * dx + c, foff + r * dxn1 + t) -=
                                    dxm(t, c);
            }
        }
        // f^n = d_Y^(n-1) h^n + h^(n+1) d_X^n.
        homotopy_to_map = Mat::zero(maps.total, homotopies.total);
        for (const auto& [n, foff] : maps.offset) {
            const int dx = x.dim(n), dyn = y.dim(n);
            if (homotopies.offset.count(n)) {
                const int hoff = homotopies.offset.at(n);
                const Mat dy = y.diff(n - 1);
                const int dyn_1 = y.dim(n - 1);
                for (int r = 0; r < dyn; ++r)
                    for (int c = 0; c < dx; ++c)
                        for (int t = 0; t < dyn_1; ++t)
                            if (dy(r, t) != 0)
                                homotopy_to_map(foff + r * dx + c, hoff + t * dx + c) += dy(r, t);
            }
            if (homotopies.offset.count(n + 1)) {
                const int hoff = homotopies.offset.at(n + 1);
                const Mat dxm = x.diff(n);
                const int dxn1 = x.dim(n + 1);
                for (int r = 0; r < dyn; ++r)
                    for (int c = 0; c < dx; ++c)
                        for (int t = 0; t < dxn1; ++t)
                            if (dxm(t, c) != 0)
                                homotopy_to_map(foff + r * dx + c, hoff + r * dxn1 + t) +=
                                    dxm(t, c);
            }
        }
    }

    ChainMap unflatten(const BoundedComplex& x, const BoundedComplex& y,
                       const std::vector<Rational>& flat) const {
        std::map<int, Mat> comps;
        for (const auto& [n, off] : maps.offset) {
            const int dx = x.dim(n), dy = y.dim(n);
            Mat m(dy, dx);
            for (int r = 0; r < dy; ++r)
                for (int c = 0; c < dx; ++c)
                    m(r, c) = flat[off + r * dx + c];
            comps[n] = std::move(m);
        }
        return ChainMap(x, y, std::move(comps));
    }
};

}  // namespace detail

/// dim of {chain maps X -> Y} / {null-homotopic maps}: the nullity of the
/// chain-map condition minus the rank of the homotopy operator. Kept as an
/// independent route from the Hom-complex cohomology, which must agree.
inline int hom_classes_dim(const BoundedComplex& x, const BoundedComplex& y) {
    const detail::HomSystems sys(x, y);
    const int chain_maps = sys.maps.total - rank(sys.chain_condition);
    return chain_maps - rank(sys.homotopy_to_map);
}

/// A chain map with nonzero homotopy class, when one exists.
inline std::optional<ChainMap> nonzero_hom_class_rep(const BoundedComplex& x,
                                                     const BoundedComplex& y) {
    const detail::HomSystems sys(x, y);
    const Mat maps = kernel_basis(sys.chain_condition);
    detail::SpanTracker homotopic(sys.maps.total);
    for (int c = 0; c < sys.homotopy_to_map.cols(); ++c)
        homotopic.add(sys.homotopy_to_map.col(c));
    for (int c = 0; c < maps.cols(); ++c) {
        if (!homotopic.contains(maps.col(c)))
            return sys.unflatten(x, y, maps.col(c));
    }
    return std::nullopt;
}

/// Left rotation of a canonical cone triangle X -u-> L -> cone(u) -> X[1]:
/// returns cone(u)[-1] -> X -u-> L -> cone(u), distinguished via the explicit
/// quasi-isomorphism theta : cone(map_a) -> L, theta(c, x) = c_L + u(x).
inline Triangle rotate_cone_triangle(const Triangle& t) {
    if (t.witness.kind != TriangleWitness::Kind::cone)
        throw ValidationError("rotate_cone_triangle needs a canonical cone triangle");
    const BoundedComplex& x = t.first;
    const BoundedComplex& l = t.second;
    const BoundedComplex b = shift(t.third, -1);  // cone(u)[-1]

    // map_a = -proj[-1] : cone(u)[-1] -> X, components (c_X, c_L) |-> -c_X.
    std::map<int, Mat> acomp;
    for (const auto& [n, d] : b.dims()) {
        (void)d;
        const int xd = x.dim(n);
        if (xd == 0)
            continue;
        Mat m(xd, b.dim(n));
        for (int i = 0; i < xd; ++i)
            m(i, i) = -1;
        acomp[n] = std::move(m);
    }
    Triangle out;
    out.first = b;
    out.second = x;
    out.third = l;
    out.map_a = ChainMap(b, x, std::move(acomp));
    out.map_b = t.map_a;  // u
    out.map_c = t.map_b;  // L -> cone(u) = b[1], equal on the nose
    // theta : cone(out.map_a) -> L, (c, x) |-> c_L + u(x) where the degree-n
    // part of cone(out.map_a) is B^(n+1) (+) X^n = X^(n+1) (+) L^n (+) X^n.
    const BoundedComplex cone_a = cone_complex(out.map_a);
    std::map<int, Mat> theta;
    for (const auto& [n, d] : cone_a.dims()) {
        const int ld = l.dim(n);
        if (ld == 0)
            continue;
        Mat m(ld, d);
        const int xoff = x.dim(n + 1);
        for (int i = 0; i < ld; ++i)
            m(i, xoff + i) = 1;
        const Mat u = t.map_a.comp(n);
        for (int r = 0; r < u.rows(); ++r)
            for (int c = 0; c < u.cols(); ++c)
                m(r, xoff + l.dim(n) + c) = u(r, c);
        theta[n] = std::move(m);
    }
    out.witness.kind = TriangleWitness::Kind::qiso;
    out.witness.comparison = ChainMap(cone_a, l, std::move(theta));
    out.witness.note = "left rotation of a cone triangle";
    return out;
}

/// Checkable distinguishedness: canonical cone data, or a verified
/// quasi-isomorphism from cone(map_a) to the third object.
inline bool is_distinguished(const Triangle& t) {
    if (validate_chain_map(t.map_a) || validate_chain_map(t.map_b) || validate_chain_map(t.map_c))
        return false;
    if (t.witness.kind == TriangleWitness::Kind::cone) {
        const Triangle canon = cone_triangle(t.map_a);
        return t.third == canon.third && t.map_b == canon.map_b && t.map_c == canon.map_c;
    }
    if (!t.witness.comparison)
        return false;
    const ChainMap& w = *t.witness.comparison;
    if (!(w.source() == cone_complex(t.map_a)) || !(w.target() == t.third))
        return false;
    if (validate_chain_map(w))
        return false;
    return is_quasi_iso(w);
}

}  // namespace mtt
