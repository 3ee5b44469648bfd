#pragma once

#include "mtt/checks.hpp"
#include "mtt/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Deterministic instance generators: the closed-form toy data, the
// directedness and obstruction demos, seeded random data, and the
// independent semisimple oracle. Every generator re-runs the main pipeline
// on its output and refuses to return an instance that misses its
// post-condition.

namespace mtt {

struct GeneratorSpec {
    std::string name;
    std::uint64_t seed = 0;
    int max_dim = 3;       // per degree
    int min_degree = -2;
    int max_degree = 2;
    int nodes = 2;
};

namespace detail {

inline std::string local_sector(const std::string& node) { return "local:" + node; }

/// Datum skeleton with unit kernels everywhere, probes and shadow objects a
/// point in degree 0, full support.
inline MTTDatum unit_datum(const std::vector<std::string>& nodes) {
    MTTDatum d;
    d.nodes = nodes;
    d.bulk_sector = "bulk";
    d.shadow_sector = "shadow";
    const int r = static_cast<int>(nodes.size());
    for (int i = 0; i < r; ++i) {
        const std::string& node = nodes[i];
        const std::string local = local_sector(node);
        d.local_sectors.push_back(local);
        d.phi.push_back(TransportKernel::unit("Phi_" + std::to_string(i + 1), local, "bulk"));
        d.psi.push_back(TransportKernel::unit("Psi_" + std::to_string(i + 1), "bulk", local));
        d.shadow_kernels.push_back(
            TransportKernel::unit("Sh_" + std::to_string(i + 1), local, "shadow"));
        d.probes.push_back(BoundedComplex::point(0));
        d.shadow_objects.push_back(BoundedComplex::point(0));
        d.state.vertices.push_back("v_" + std::to_string(i + 1));
        d.state.basis_labels.push_back("e_" + std::to_string(i + 1));
        d.state.c_sigma.push_back(Rational(1));
    }
    d.support.assign(r, std::vector<int>(r, 1));
    return d;
}

inline void require_valid(const MTTDatum& d, const std::string& who) {
    const auto diagnostics = validate_datum(d);
    if (!diagnostics.empty())
        throw std::logic_error(who + " produced an invalid datum: " + diagnostics[0].where +
                               ": " + diagnostics[0].message);
}

inline void require_post(bool ok, const std::string& who, const std::string& what) {
    if (!ok)
        throw std::logic_error(who + " post-condition failed: " + what);
}

/// Convolution of finitely supported dimension functions.
inline std::map<int, int> convolve(const std::map<int, int>& a, const std::map<int, int>& b) {
    std::map<int, int> out;
    for (const auto& [p, x] : a)
        for (const auto& [q, y] : b)
            out[p + q] += x * y;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace detail

/// Channel (1,2) with interaction cohomology exactly d in degree m0: unit
/// kernels, L_1 = Q^d at degree 0 and L_2 a point placed so that the Hom
/// complex concentrates in degree m0.
inline MTTDatum gen_single_degree(int d, int m0) {
    if (d < 1)
        throw std::invalid_argument("gen_single_degree needs d >= 1");
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    datum.probes[0] = BoundedComplex::point(0, d);
    datum.probes[1] = BoundedComplex::point(m0);
    datum.shadow_objects[0] = datum.probes[0];
    datum.shadow_objects[1] = datum.probes[1];
    detail::require_valid(datum, "gen_single_degree");
    detail::require_post(interaction_polynomial(datum, 1, 2) == LaurentPoly::monomial(d, m0),
                         "gen_single_degree", "P_12 = d q^m0");
    return datum;
}

/// Channel (1,2) with P_12 = a q^m + b q^(m+1).
inline MTTDatum gen_two_degree(int a, int b, int m) {
    if (a < 0 || b < 0 || a + b < 1)
        throw std::invalid_argument("gen_two_degree needs a, b >= 0 with a + b >= 1");
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    std::map<int, int> dims;
    if (a > 0)
        dims[m] = a;
    if (b > 0)
        dims[m + 1] = b;
    datum.probes[1] = BoundedComplex(dims, {});
    datum.shadow_objects[1] = datum.probes[1];
    detail::require_valid(datum, "gen_two_degree");
    LaurentPoly expected;
    expected.set(m, a);
    expected.set(m + 1, b);
    detail::require_post(interaction_polynomial(datum, 1, 2) == expected, "gen_two_degree",
                         "P_12 = a q^m + b q^(m+1)");
    return datum;
}

/// Two-node datum with P_12 != P_21, both nonzero; Psi_1 carries a degree
/// shift that Psi_2 does not, which makes P_12 = q * P_21.
inline MTTDatum gen_directedness_witness() {
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    datum.psi[0].kernel = BoundedComplex::point(1);
    detail::require_valid(datum, "gen_directedness_witness");
    const LaurentPoly p12 = interaction_polynomial(datum, 1, 2);
    const LaurentPoly p21 = interaction_polynomial(datum, 2, 1);
    detail::require_post(!p12.is_zero() && !p21.is_zero() && p12 != p21 &&
                             p12 == p21.shifted(1),
                         "gen_directedness_witness", "P_12 = q P_21, both nonzero");
    return datum;
}

/// Two data with identical nodewise data (probes, shadow objects, state,
/// support, shadow compatibility) whose bulk kernels differ, so P_12
/// differs while every nodewise quantity agrees. Nothing built from the
/// shadow residue alone can tell them apart.
inline std::pair<MTTDatum, MTTDatum> gen_obstruction_demo() {
    MTTDatum first = detail::unit_datum({"n1", "n2"});
    first.phi[1].kernel = BoundedComplex::zero_object();
    first.support = {{1, 1}, {0, 0}};
    MTTDatum second = first;
    second.psi[1].kernel = BoundedComplex({{0, 1}, {1, 1}}, {});
    detail::require_valid(first, "gen_obstruction_demo");
    detail::require_valid(second, "gen_obstruction_demo");
    const LaurentPoly p12_first = interaction_polynomial(first, 1, 2);
    const LaurentPoly p12_second = interaction_polynomial(second, 1, 2);
    detail::require_post(p12_first != p12_second, "gen_obstruction_demo", "P_12 differs");
    detail::require_post(interaction_polynomial(first, 1, 1) ==
                             interaction_polynomial(second, 1, 1),
                         "gen_obstruction_demo", "diagonal channel (1,1) agrees");
    return {std::move(first), std::move(second)};
}

/// Bridge showcase: multi-degree kernels and probes, full support, all
/// channels passing content and detector with P != 0.
inline MTTDatum gen_bridge_demo() {
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    datum.phi[1].kernel = BoundedComplex({{0, 1}, {1, 1}}, {});
    datum.psi[1].kernel = BoundedComplex({{-1, 1}, {0, 1}}, {});
    datum.probes[1] = BoundedComplex({{0, 1}, {1, 1}}, {});
    datum.shadow_objects[1] = datum.probes[1];
    detail::require_valid(datum, "gen_bridge_demo");
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            const auto [cl, cr] = content_check(datum, i, j);
            detail::require_post((cl || cr) && detector_check(datum, i, j) &&
                                     !interaction_polynomial(datum, i, j).is_zero(),
                                 "gen_bridge_demo", "all channels pass content+detector with P != 0");
        }
    return datum;
}

/// Right-visibility showcase: the transported probe admits a nonzero
/// homotopy class onto L_2.
inline MTTDatum gen_visibility_right_demo() {
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    datum.probes[0] = BoundedComplex({{0, 1}, {1, 1}}, {});
    datum.shadow_objects[0] = datum.probes[0];
    detail::require_valid(datum, "gen_visibility_right_demo");
    const auto witness =
        find_right_visibility(transported_probe(datum, 1, 2), datum.probes[1]);
    detail::require_post(witness.has_value() &&
                             !interaction_polynomial(datum, 1, 2).is_zero(),
                         "gen_visibility_right_demo", "right witness with P_12 != 0");
    return datum;
}

/// Left-visibility showcase: a nonzero class L_2 -> A_12(L_1). The witness
/// certifies RHom(L_2, X) != 0; the right-variance polynomial is reported
/// separately without any implication between the two.
inline MTTDatum gen_visibility_left_demo() {
    MTTDatum datum = detail::unit_datum({"n1", "n2"});
    datum.psi[1].kernel = BoundedComplex({{0, 1}, {1, 1}}, {});
    detail::require_valid(datum, "gen_visibility_left_demo");
    const auto witness = find_left_visibility(datum.probes[1], transported_probe(datum, 1, 2));
    detail::require_post(witness.has_value(), "gen_visibility_left_demo", "left witness exists");
    return datum;
}

/// Seeded random datum within the spec caps. Differentials satisfy d.d = 0
/// by construction (split complexes conjugated by unimodular matrices);
/// shadow objects are the homology models of the shadow images, so
/// probe-shadow compatibility holds by construction.
inline MTTDatum gen_random(const GeneratorSpec& spec) {
    if (spec.nodes < 1 || spec.max_dim < 1 || spec.min_degree > spec.max_degree)
        throw std::invalid_argument("gen_random: caps must be positive");
    Rng rng = Rng::for_trial(spec.seed, 0x6d74742d72616e64ULL);
    std::vector<std::string> nodes;
    for (int i = 1; i <= spec.nodes; ++i)
        nodes.push_back("n" + std::to_string(i));
    MTTDatum d = detail::unit_datum(nodes);

    const ComplexCaps probe_caps{spec.min_degree, spec.max_degree, spec.max_dim};
    // Kernels stay within the caps but on a narrower band, keeping composite
    // channels within reach of exact arithmetic.
    const ComplexCaps kernel_caps{std::max(spec.min_degree, -1), std::min(spec.max_degree, 1),
                                  std::min(spec.max_dim, 2)};
    for (int i = 0; i < spec.nodes; ++i) {
        d.phi[i].kernel = random_complex(rng, kernel_caps);
        d.psi[i].kernel = random_complex(rng, kernel_caps);
        d.shadow_kernels[i].kernel = random_complex(rng, kernel_caps);
        d.probes[i] = random_complex(rng, probe_caps);
        d.shadow_objects[i] = homology_model(apply(d.shadow_kernels[i], d.probes[i])).first;
        d.state.c_sigma[i] = Rational(rng.uniform(-6, 6), rng.uniform(1, 4));
    }
    for (int i = 0; i < spec.nodes; ++i)
        for (int j = 0; j < spec.nodes; ++j)
            d.support[i][j] = rng.uniform(0, 1);
    detail::require_valid(d, "gen_random");
    return d;
}

/// Independent verification path for P_ij: homology dimensions and Kunneth
/// convolutions only, never a Hom or tensor complex. Must agree with
/// interaction_polynomial exactly on every instance.
inline LaurentPoly semisimple_oracle(const MTTDatum& d, int i, int j) {
    require_channel(d, i, j);
    const std::map<int, int> h_transported = detail::convolve(
        homology_dims(d.psi[j - 1].kernel),
        detail::convolve(homology_dims(d.phi[i - 1].kernel), homology_dims(d.probes[i - 1])));
    const std::map<int, int> h_probe = homology_dims(d.probes[j - 1]);
    LaurentPoly p;
    for (const auto& [t, a] : h_transported)
        for (const auto& [s, b] : h_probe)
            p.add(s - t, static_cast<std::int64_t>(a) * b);
    return p;
}

/// Demo registry used by the CLI; names are part of the external interface.
inline const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names = {
        "single-degree", "two-degree",       "directedness",  "obstruction",
        "visibility-right", "visibility-left", "bridge"};
    return names;
}

}  // namespace mtt
