#pragma once

#include "mtt/hom.hpp"
#include "mtt/parallel.hpp"
#include "mtt/transport.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// The full transport datum: r nodes, bulk/localized/shadow sectors, kernels
// wiring them, localized probes, shadow objects, the binary support matrix,
// and the opaque state package. Channel (i, j) pushes the i-th probe through
// the bulk into sector j and pairs it against the j-th probe.

namespace mtt {

/// Nodewise state data carried through to the inherited package. Stored and
/// serialized, never computed on.
struct StatePackage {
    std::vector<std::string> vertices;
    std::vector<std::string> basis_labels;
    std::vector<Rational> c_sigma;

    bool operator==(const StatePackage& other) const = default;
};

struct MTTDatum {
    std::vector<std::string> nodes;
    std::string bulk_sector;
    std::vector<std::string> local_sectors;
    std::string shadow_sector;
    std::vector<TransportKernel> phi;             // local_i -> bulk
    std::vector<TransportKernel> psi;             // bulk -> local_i
    std::vector<BoundedComplex> probes;           // L_i in local_i
    std::vector<TransportKernel> shadow_kernels;  // local_j -> shadow
    std::vector<BoundedComplex> shadow_objects;   // Q_j in the shadow sector
    std::vector<std::vector<int>> support;        // r x r of 0/1
    StatePackage state;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// One validation finding; `where` names the offending field or node.
struct Diagnostic {
    std::string where;
    std::string message;
};

/// Full datum validation: shapes, d.d = 0 everywhere, sector wiring, support
/// bits, state sizes, and probe-shadow compatibility (the shadow image of
/// every probe must be quasi-isomorphic to its shadow object, checked by
/// homology dims plus explicit comparison maps). Empty result means valid.
inline std::vector<Diagnostic> validate_datum(const MTTDatum& d) {
    std::vector<Diagnostic> out;
    const int r = d.size();
    if (r == 0) {
        out.push_back({"nodes", "datum has no nodes"});
        return out;
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (d.nodes[i] == d.nodes[j])
                out.push_back({"nodes", "duplicate node id '" + d.nodes[i] + "'"});

    auto expect_size = [&](const char* field, std::size_t got) {
        if (got != static_cast<std::size_t>(r))
            out.push_back({field, "expected " + std::to_string(r) + " entries, got " +
                                      std::to_string(got)});
    };
    expect_size("local_sectors", d.local_sectors.size());
    expect_size("phi", d.phi.size());
    expect_size("psi", d.psi.size());
    expect_size("probes", d.probes.size());
    expect_size("shadow_kernels", d.shadow_kernels.size());
    expect_size("shadow_objects", d.shadow_objects.size());
    if (!out.empty())
        return out;

    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (d.local_sectors[i] == d.local_sectors[j])
                out.push_back({"local_sectors", "sectors of nodes '" + d.nodes[i] + "' and '" +
                                                    d.nodes[j] + "' coincide"});
    for (int i = 0; i < r; ++i) {
        if (d.bulk_sector == d.local_sectors[i])
            out.push_back({"bulk_sector", "bulk sector equals local sector of node '" +
                                              d.nodes[i] + "'"});
        if (d.shadow_sector == d.local_sectors[i])
            out.push_back({"shadow_sector", "shadow sector equals local sector of node '" +
                                                d.nodes[i] + "'"});
    }
    if (d.bulk_sector == d.shadow_sector)
        out.push_back({"shadow_sector", "shadow sector equals bulk sector"});

    auto check_complex = [&](const std::string& where, const BoundedComplex& x) {
        if (auto v = validate(x))
            out.push_back({where, v->message + " (degree " + std::to_string(v->degree) + ")"});
    };
    auto check_kernel = [&](const std::string& where, const TransportKernel& k,
                            const std::string& src, const std::string& tgt) {
        check_complex(where + ".kernel", k.kernel);
        if (k.source_sector != src)
            out.push_back(
                {where, "source sector '" + k.source_sector + "', expected '" + src + "'"});
        if (k.target_sector != tgt)
            out.push_back(
                {where, "target sector '" + k.target_sector + "', expected '" + tgt + "'"});
    };
    for (int i = 0; i < r; ++i) {
        const std::string node = d.nodes[i];
        check_kernel("phi[" + node + "]", d.phi[i], d.local_sectors[i], d.bulk_sector);
        check_kernel("psi[" + node + "]", d.psi[i], d.bulk_sector, d.local_sectors[i]);
        check_kernel("shadow_kernels[" + node + "]", d.shadow_kernels[i], d.local_sectors[i],
                     d.shadow_sector);
        check_complex("probes[" + node + "]", d.probes[i]);
        check_complex("shadow_objects[" + node + "]", d.shadow_objects[i]);
    }

    if (d.support.size() != static_cast<std::size_t>(r))
        out.push_back({"support", "expected " + std::to_string(r) + " rows"});
    else
        for (int i = 0; i < r; ++i) {
            if (d.support[i].size() != static_cast<std::size_t>(r)) {
                out.push_back({"support", "row " + std::to_string(i + 1) + " has wrong length"});
                continue;
            }
            for (int j = 0; j < r; ++j)
                if (d.support[i][j] != 0 && d.support[i][j] != 1)
                    out.push_back({"support", "entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is not 0/1"});
        }

    if (d.state.vertices.size() != static_cast<std::size_t>(r) ||
        d.state.basis_labels.size() != static_cast<std::size_t>(r) ||
        d.state.c_sigma.size() != static_cast<std::size_t>(r))
        out.push_back({"state", "vertices/basis_labels/c_sigma must all have " +
                                    std::to_string(r) + " entries"});

    if (!out.empty())
        return out;

    // Probe-shadow compatibility, per node: Sh_j(L_j) ~ Q_j. Over the
    // rational field this is homology-dims equality; the comparison maps to
    // the common homology model are exhibited and re-checked.
    for (int j = 0; j < r; ++j) {
        const BoundedComplex image = apply(d.shadow_kernels[j], d.probes[j]);
        if (homology_dims(image) != homology_dims(d.shadow_objects[j])) {
            out.push_back({"shadow_objects[" + d.nodes[j] + "]",
                           "probe-shadow compatibility fails: shadow image of the probe is not "
                           "quasi-isomorphic to the shadow object"});
            continue;
        }
        const auto [h1, p1] = homology_model(image);
        const auto [h2, p2] = homology_model(d.shadow_objects[j]);
        if (!(h1 == h2) || !is_quasi_iso(p1) || !is_quasi_iso(p2))
            out.push_back({"shadow_objects[" + d.nodes[j] + "]",
                           "probe-shadow comparison maps failed verification"});
    }
    return out;
}

inline void require_channel(const MTTDatum& d, int i, int j) {
    if (i < 1 || j < 1 || i > d.size() || j > d.size())
        throw std::out_of_range("channel (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range for " + std::to_string(d.size()) + " nodes");
}

/// The composite transport kernel of channel (i, j). 1-based node indices.
inline TransportKernel channel_kernel(const MTTDatum& d, int i, int j) {
    require_channel(d, i, j);
    return compose(d.psi[j - 1], d.phi[i - 1]);
}

/// A_ij(L_i): the i-th probe pushed through the bulk into sector j.
inline BoundedComplex transported_probe(const MTTDatum& d, int i, int j) {
    require_channel(d, i, j);
    return apply_in_sector(channel_kernel(d, i, j), d.probes[i - 1],
                           d.local_sectors[i - 1]);
}

/// H_ij = RHom(A_ij(L_i), L_j).
inline BoundedComplex interaction_complex(const MTTDatum& d, int i, int j) {
    return hom_complex(transported_probe(d, i, j), d.probes[j - 1]);
}

/// P_ij(q), the Poincare polynomial of the interaction complex.
inline LaurentPoly interaction_polynomial(const MTTDatum& d, int i, int j) {
    require_channel(d, i, j);
    return poincare(transported_probe(d, i, j), d.probes[j - 1]);
}

struct GradedInteractionMatrix {
    int size = 0;
    std::vector<LaurentPoly> entries;  // row-major, (i, j) at (i-1)*size + (j-1)

    const LaurentPoly& at(int i, int j) const { return entries[(i - 1) * size + (j - 1)]; }
    bool operator==(const GradedInteractionMatrix& other) const = default;
};

/// All r^2 channels; independent, so they run in parallel, assembled in
/// (i, j) order.
inline GradedInteractionMatrix graded_matrix(const MTTDatum& d) {
    const int r = d.size();
    GradedInteractionMatrix m;
    m.size = r;
    m.entries.resize(static_cast<std::size_t>(r) * r);
    parallel_for(r * r, [&](int idx) {
        const int i = idx / r + 1, j = idx % r + 1;
        m.entries[idx] = interaction_polynomial(d, i, j);
    });
    return m;
}

/// Derived nonvanishing bits [P_ij != 0], reported alongside the input
/// support matrix; no equality between the two is ever asserted.
inline std::vector<std::vector<int>> derived_nonvanishing(const GradedInteractionMatrix& m) {
    std::vector<std::vector<int>> out(m.size, std::vector<int>(m.size, 0));
    for (int i = 1; i <= m.size; ++i)
        for (int j = 1; j <= m.size; ++j)
            out[i - 1][j - 1] = m.at(i, j).is_zero() ? 0 : 1;
    return out;
}

/// The finite output package: state data, input support, graded matrix, and
/// both scalar specializations per channel.
struct InheritedPackage {
    StatePackage state;
    std::vector<std::vector<int>> support;
    GradedInteractionMatrix graded;
    std::vector<std::pair<std::int64_t, std::int64_t>> specializations;  // (w_tot, w_chi)

    const std::pair<std::int64_t, std::int64_t>& spec_at(int i, int j) const {
        return specializations[(i - 1) * graded.size + (j - 1)];
    }
    bool operator==(const InheritedPackage& other) const = default;
};

inline InheritedPackage inherited_package(const MTTDatum& d) {
    InheritedPackage pkg;
    pkg.state = d.state;
    pkg.support = d.support;
    pkg.graded = graded_matrix(d);
    pkg.specializations.reserve(pkg.graded.entries.size());
    for (const auto& p : pkg.graded.entries)
        pkg.specializations.push_back({p.eval(1), p.eval(-1)});
    return pkg;
}

/// A map of graded vector spaces, one exact matrix per degree.
struct GradedLinearMap {
    std::map<int, Mat> comps;
    std::map<int, int> source_dims;
    std::map<int, int> target_dims;
};

/// Variance of the interaction profunctor at channel (i, j), base point
/// (X, Y) = (f.target, g.source) with f in sector i and g in sector j (the
/// sector placement of f and g is the caller's obligation). Returns the maps
/// induced on RHom cohomology by precomposition with the transported f
/// (contravariant leg) and postcomposition with g (covariant leg).
inline std::pair<GradedLinearMap, GradedLinearMap> induced_profunctor_maps(const MTTDatum& d,
                                                                           int i, int j,
                                                                           const ChainMap& f,
                                                                           const ChainMap& g) {
    require_channel(d, i, j);
    const TransportKernel a = channel_kernel(d, i, j);
    const BoundedComplex ax = apply(a, f.target());
    const ChainMap af = apply_to_map(a, f);

    const ChainMap pre = precompose_map(af, g.source());     // Hom(AX, Y) -> Hom(AX', Y)
    const ChainMap post = postcompose_map(ax, g);            // Hom(AX, Y) -> Hom(AX, Y')

    auto induced_all = [](const ChainMap& phi) {
        GradedLinearMap out;
        const auto hs = homology_dims(phi.source());
        const auto ht = homology_dims(phi.target());
        out.source_dims = hs;
        out.target_dims = ht;
        std::map<int, char> degrees;
        for (const auto& [n, v] : hs) {
            (void)v;
            degrees[n] = 0;
        }
        for (const auto& [n, v] : ht) {
            (void)v;
            degrees[n] = 0;
        }
        for (const auto& [n, v] : degrees) {
            (void)v;
            const HomologyBasis src = homology_basis(phi.source(), n);
            const HomologyBasis tgt = homology_basis(phi.target(), n);
            out.comps[n] = induced_on_homology(phi, n, src, tgt);
        }
        return out;
    };
    return {induced_all(pre), induced_all(post)};
}

}  // namespace mtt
