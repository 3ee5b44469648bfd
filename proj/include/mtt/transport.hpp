#pragma once

#include "mtt/complex.hpp"

#include <optional>
#include <string>
#include <utility>

// Transport functors realized as tensor kernels: applying a kernel K sends
// X to the total complex K (x) X. Tensoring with a bounded complex of vector
// spaces is exact by construction, which is the property the transport layer
// exists to certify. The kernel factor always sits on the left.

namespace mtt {

/// Thrown when kernels are wired against the wrong sectors.
class WiringError : public std::runtime_error {
  public:
    explicit WiringError(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded complex acting as an exact functor between two named sectors.
/// Sector ids are opaque labels checked at wiring time only.
struct TransportKernel {
    BoundedComplex kernel;
    std::string label;
    std::string source_sector;
    std::string target_sector;

    static TransportKernel unit(std::string label, std::string source, std::string target) {
        return TransportKernel{BoundedComplex::point(0), std::move(label), std::move(source),
                               std::move(target)};
    }

    bool operator==(const TransportKernel& other) const {
        return kernel == other.kernel && label == other.label &&
               source_sector == other.source_sector && target_sector == other.target_sector;
    }
};

/// K (x) X.
inline BoundedComplex apply(const TransportKernel& k, const BoundedComplex& x) {
    return tensor_total(k.kernel, x);
}

/// Sector-checked application, used wherever the caller knows which sector
/// the object lives in.
inline BoundedComplex apply_in_sector(const TransportKernel& k, const BoundedComplex& x,
                                      const std::string& sector_of_x) {
    if (sector_of_x != k.source_sector)
        throw WiringError("kernel '" + k.label + "' expects sector '" + k.source_sector +
                          "', object lives in '" + sector_of_x + "'");
    return apply(k, x);
}

/// id_K (x) f : K (x) X -> K (x) Y, blockwise kron(id, f^q).
inline ChainMap apply_to_map(const TransportKernel& k, const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    const BoundedComplex kx = apply(k, x);
    const BoundedComplex ky = apply(k, y);
    std::map<int, Mat> comps;
    for (const auto& [n, total] : kx.dims()) {
        if (ky.dim(n) == 0)
            continue;
        Mat m(ky.dim(n), total);
        int src_off = 0;
        for (const auto& [p, dk] : k.kernel.dims()) {
            const int q = n - p;
            if (x.dim(q) == 0)
                continue;
            // Target offset of block p inside (K (x) Y)^n.
            int tgt_off = 0;
            bool tgt_exists = false;
            for (const auto& [tp, tdk] : k.kernel.dims()) {
                if (tp == p) {
                    tgt_exists = y.dim(q) > 0;
                    break;
                }
                tgt_off += tdk * y.dim(n - tp);
            }
            if (tgt_exists) {
                const Mat part = kron(Mat::identity(dk), f.comp(q));
                for (int r = 0; r < part.rows(); ++r)
                    for (int c = 0; c < part.cols(); ++c)
                        if (part(r, c) != 0)
                            m(tgt_off + r, src_off + c) = part(r, c);
            }
            src_off += dk * x.dim(q);
        }
        comps[n] = std::move(m);
    }
    return ChainMap(kx, ky, std::move(comps));
}

/// Composite kernel realizing "apply K1, then K2". Requires the wiring to
/// line up; the composite's kernel is K2 (x) K1.
inline TransportKernel compose(const TransportKernel& k2, const TransportKernel& k1) {
    if (k1.target_sector != k2.source_sector)
        throw WiringError("cannot compose '" + k2.label + "' after '" + k1.label +
                          "': sector '" + k1.target_sector + "' feeds '" + k2.source_sector +
                          "'");
    return TransportKernel{tensor_total(k2.kernel, k1.kernel), k2.label + "*" + k1.label,
                           k1.source_sector, k2.target_sector};
}

/// The explicit associativity isomorphism
/// (K2 (x) K1) (x) X  ->  K2 (x) (K1 (x) X).
/// Tensor associativity carries no Koszul sign; this is a pure basis
/// reordering between the two block layouts.
inline ChainMap associativity_iso(const TransportKernel& k2, const TransportKernel& k1,
                                  const BoundedComplex& x) {
    const TransportKernel k21 = compose(k2, k1);
    const BoundedComplex lhs = apply(k21, x);
    const BoundedComplex k1x = apply(k1, x);
    const BoundedComplex rhs = tensor_total(k2.kernel, k1x);

    // Offset of basis vector (a, b, c) in degree n of each side.
    std::map<int, Mat> comps;
    for (const auto& [n, total] : lhs.dims()) {
        if (rhs.dim(n) != total)
            throw ValidationError("associativity: block totals disagree at degree " +
                                  std::to_string(n));
        Mat m(total, total);
        int src_off = 0;
        // lhs blocks: t ascending over K2 (x) K1 degrees, then s = n - t;
        // inside, (p from K2, q = t - p) ascending, bases K2-major.
        for (const auto& [t, dk21] : k21.kernel.dims()) {
            const int s = n - t;
            const int dxs = x.dim(s);
            if (dxs == 0)
                continue;
            int inner_off = 0;
            for (const auto& [p, dk2] : k2.kernel.dims()) {
                const int q = t - p;
                const int dk1 = k1.kernel.dim(q);
                if (dk1 == 0)
                    continue;
                // rhs offset: blocks p' ascending over K2, inside K1 (x) X
                // degree n - p, blocks q' ascending, bases major-to-minor
                // (a, b, c).
                int rhs_off = 0;
                for (const auto& [pp, dk2p] : k2.kernel.dims()) {
                    if (pp == p)
                        break;
                    rhs_off += dk2p * k1x.dim(n - pp);
                }
                int k1x_off = 0;
                for (const auto& [qq, dk1q] : k1.kernel.dims()) {
                    if (qq == q)
                        break;
                    k1x_off += dk1q * x.dim(n - p - qq);
                }
                const int k1x_deg_dim = k1x.dim(n - p);
                for (int a = 0; a < dk2; ++a)
                    for (int b = 0; b < dk1; ++b)
                        for (int c = 0; c < dxs; ++c) {
                            const int src = src_off + (inner_off + a * dk1 + b) * dxs + c;
                            const int dst = rhs_off + a * k1x_deg_dim + (k1x_off + b * dxs + c);
                            m(dst, src) = 1;
                        }
                inner_off += dk2 * dk1;
            }
            src_off += dk21 * dxs;
        }
        comps[n] = std::move(m);
    }
    return ChainMap(lhs, rhs, std::move(comps));
}

/// The canonical comparison K (x) X[1] -> (K (x) X)[1]: sign (-1)^p on the
/// K-degree-p block, identity otherwise.
inline ChainMap shift_comparison(const TransportKernel& k, const BoundedComplex& x) {
    const BoundedComplex lhs = apply(k, shift(x, 1));
    const BoundedComplex rhs = shift(apply(k, x), 1);
    std::map<int, Mat> comps;
    for (const auto& [n, total] : lhs.dims()) {
        if (rhs.dim(n) != total)
            throw ValidationError("shift comparison: dimensions disagree at degree " +
                                  std::to_string(n));
        Mat m(total, total);
        int off = 0;
        for (const auto& [p, dk] : k.kernel.dims()) {
            const int q = n - p;  // degree in X[1], i.e. X^(q+1)
            const int dx = x.dim(q + 1);
            if (dx == 0)
                continue;
            // The same (p, X^(q+1)) block sits at the same offset in
            // (K (x) X)^(n+1).
            for (int i = 0; i < dk * dx; ++i)
                m(off + i, off + i) = (p % 2 == 0) ? 1 : -1;
            off += dk * dx;
        }
        comps[n] = std::move(m);
    }
    return ChainMap(lhs, rhs, std::move(comps));
}

/// Result of certifying that a kernel commutes with cones.
struct ExactnessCertificate {
    bool ok = false;
    bool chain_map_ok = false;
    bool iso_ok = false;
    int min_degree = 0;
    int max_degree = 0;
    std::optional<int> failure_degree;
    std::string detail;
    ChainMap iso;  // cone(K (x) f) -> K (x) cone(f)
};

/// Builds the explicit degreewise isomorphism
/// cone(K (x) f) -> K (x) cone(f), with sign (-1)^p on the K^p (x) X^(n+1-p)
/// summands, and verifies it is a chain isomorphism. A failure pinpoints the
/// first bad degree; it can only fire on a sign-convention bug.
inline ExactnessCertificate certify_exactness(const TransportKernel& k, const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    const ChainMap kf = apply_to_map(k, f);
    const BoundedComplex lhs = cone_complex(kf);
    const Triangle cone_f = cone_triangle(f);
    const BoundedComplex rhs = apply(k, cone_f.third);

    ExactnessCertificate cert;
    cert.min_degree = lhs.is_zero_object() ? 0 : lhs.min_degree();
    cert.max_degree = lhs.is_zero_object() ? 0 : lhs.max_degree();

    std::map<int, Mat> comps;
    for (const auto& [n, total] : lhs.dims()) {
        if (rhs.dim(n) != total) {
            cert.failure_degree = n;
            cert.detail = "dimension mismatch at degree " + std::to_string(n);
            return cert;
        }
        Mat m(total, total);
        // rhs block offsets: p ascending, inside cone(f)^(n-p) = X^(n-p+1) (+) Y^(n-p).
        auto rhs_offset = [&](int p) {
            int off = 0;
            for (const auto& [pp, dk] : k.kernel.dims()) {
                if (pp == p)
                    break;
                off += dk * cone_f.third.dim(n - pp);
            }
            return off;
        };
        // lhs: (K (x) X)^(n+1) first, then (K (x) Y)^n.
        int src_off = 0;
        for (const auto& [p, dk] : k.kernel.dims()) {
            const int dx = x.dim(n + 1 - p);
            if (dx == 0)
                continue;
            const int dst_block = rhs_offset(p);
            const int cone_dim = cone_f.third.dim(n - p);
            for (int a = 0; a < dk; ++a)
                for (int b = 0; b < dx; ++b) {
                    // X-part sits first inside cone(f)^(n-p).
                    const int dst = dst_block + a * cone_dim + b;
                    m(dst, src_off + a * dx + b) = (p % 2 == 0) ? 1 : -1;
                }
            src_off += dk * dx;
        }
        for (const auto& [p, dk] : k.kernel.dims()) {
            const int dy = y.dim(n - p);
            if (dy == 0)
                continue;
            const int dst_block = rhs_offset(p);
            const int cone_dim = cone_f.third.dim(n - p);
            const int x_part = x.dim(n - p + 1);
            for (int a = 0; a < dk; ++a)
                for (int b = 0; b < dy; ++b) {
                    const int dst = dst_block + a * cone_dim + x_part + b;
                    m(dst, src_off + a * dy + b) = 1;
                }
            src_off += dk * dy;
        }
        comps[n] = std::move(m);
    }
    cert.iso = ChainMap(lhs, rhs, std::move(comps));

    if (auto bad = validate_chain_map(cert.iso)) {
        cert.failure_degree = bad->degree;
        cert.detail = bad->message;
        return cert;
    }
    cert.chain_map_ok = true;
    for (const auto& [n, m] : cert.iso.comps()) {
        if (m.rows() != m.cols() || rank(m) != m.rows()) {
            cert.failure_degree = n;
            cert.detail = "comparison not invertible at degree " + std::to_string(n);
            return cert;
        }
    }
    cert.iso_ok = true;
    cert.ok = true;
    return cert;
}

/// Image of a distinguished triangle under a kernel. The third object is
/// K (x) third; distinguishedness is witnessed by the certified cone
/// comparison (composed with the transported witness when the input triangle
/// is itself only cone-up-to-quasi-isomorphism).
inline Triangle transport_triangle(const TransportKernel& k, const Triangle& t) {
    Triangle out;
    out.first = apply(k, t.first);
    out.second = apply(k, t.second);
    out.third = apply(k, t.third);
    out.map_a = apply_to_map(k, t.map_a);
    out.map_b = apply_to_map(k, t.map_b);
    // map_c : K (x) third -> K (x) first[1] -> (K (x) first)[1].
    out.map_c = compose(shift_comparison(k, t.first), apply_to_map(k, t.map_c));

    const ExactnessCertificate cert = certify_exactness(k, t.map_a);
    if (!cert.ok)
        throw ValidationError("transport_triangle: cone certification failed: " + cert.detail);
    if (t.witness.kind == TriangleWitness::Kind::cone) {
        out.witness.kind = TriangleWitness::Kind::qiso;
        out.witness.comparison = cert.iso;
        out.witness.note = "certified cone comparison";
    } else {
        out.witness.kind = TriangleWitness::Kind::qiso;
        out.witness.comparison = compose(apply_to_map(k, *t.witness.comparison), cert.iso);
        out.witness.note = "certified cone comparison after transported witness";
    }
    return out;
}

/// Canonical reordering K (x) (X (+) Y) -> (K (x) X) (+) (K (x) Y);
/// a permutation matrix in every degree.
inline ChainMap additivity_iso(const TransportKernel& k, const BoundedComplex& x,
                               const BoundedComplex& y) {
    const BoundedComplex lhs = apply(k, direct_sum(x, y));
    const BoundedComplex rhs = direct_sum(apply(k, x), apply(k, y));
    const BoundedComplex kx = apply(k, x);
    std::map<int, Mat> comps;
    for (const auto& [n, total] : lhs.dims()) {
        if (rhs.dim(n) != total)
            throw ValidationError("additivity: dimensions disagree at degree " +
                                  std::to_string(n));
        Mat m(total, total);
        int src_off = 0;
        for (const auto& [p, dk] : k.kernel.dims()) {
            const int q = n - p;
            const int dx = x.dim(q), dy = y.dim(q);
            if (dx + dy == 0)
                continue;
            int x_dst = 0, y_dst = 0;
            for (const auto& [pp, dkp] : k.kernel.dims()) {
                if (pp == p)
                    break;
                x_dst += dkp * x.dim(n - pp);
                y_dst += dkp * y.dim(n - pp);
            }
            for (int a = 0; a < dk; ++a) {
                for (int b = 0; b < dx; ++b)
                    m(x_dst + a * dx + b, src_off + a * (dx + dy) + b) = 1;
                for (int b = 0; b < dy; ++b)
                    m(kx.dim(n) + y_dst + a * dy + b, src_off + a * (dx + dy) + dx + b) = 1;
            }
            src_off += dk * (dx + dy);
        }
        comps[n] = std::move(m);
    }
    return ChainMap(lhs, rhs, std::move(comps));
}

}  // namespace mtt
