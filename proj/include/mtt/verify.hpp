#pragma once

#include "mtt/models.hpp"
#include "mtt/parallel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Seeded property suites behind `verify`. Each trial draws its own stream
// from (seed, trial index), so results are identical whether trials run
// serially or across workers, and two runs of the same command produce
// byte-identical reports.

namespace mtt {

struct SuiteResult {
    std::string name;
    int trials = 0;
    int passed = 0;
    int failed = 0;
    std::optional<std::string> first_failure;

    void record(int trial, bool ok, const std::string& what) {
        ++trials;
        if (ok) {
            ++passed;
        } else {
            ++failed;
            if (!first_failure)
                first_failure = "trial " + std::to_string(trial) + ": " + what;
        }
    }
};

namespace detail {

/// Caps used by the random suites. Triangles get the wide window; targets
/// and datum complexes stay narrow so composite channels remain fast under
/// exact arithmetic.
struct SuiteCaps {
    ComplexCaps triangle{-3, 3, 5};
    ComplexCaps target{-1, 1, 3};
    GeneratorSpec datum{"suite", 0, 3, -1, 1, 2};
};

inline MTTDatum suite_datum(std::uint64_t seed, int trial, const SuiteCaps& caps,
                            const std::optional<MTTDatum>& fixed) {
    if (fixed)
        return *fixed;
    GeneratorSpec spec = caps.datum;
    spec.seed = seed ^ (0x5bd1e995ULL * (static_cast<std::uint64_t>(trial) + 1));
    return gen_random(spec);
}

inline std::pair<int, int> cycle_channel(const MTTDatum& d, int trial) {
    const int r = d.size();
    const int idx = trial % (r * r);
    return {idx / r + 1, idx % r + 1};
}

}  // namespace detail

/// LES suite: random distinguished triangles, transported and paired
/// against random targets; every long exact sequence must verify at every
/// position.
inline SuiteResult run_les_suite(std::uint64_t seed, int trials,
                                 const std::optional<MTTDatum>& fixed = std::nullopt) {
    const detail::SuiteCaps caps;
    SuiteResult result;
    result.name = "les";
    std::vector<std::pair<bool, std::string>> outcomes(trials, {false, ""});
    parallel_for(trials, [&](int t) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
        const MTTDatum d = detail::suite_datum(seed, t, caps, fixed);
        const auto [i, j] = detail::cycle_channel(d, t);
        const BoundedComplex xprime = random_complex(rng, caps.triangle);
        const BoundedComplex x = random_complex(rng, caps.triangle);
        const ChainMap f = random_chain_map(xprime, x, rng);
        const Triangle tri = cone_triangle(f);
        const BoundedComplex y = random_complex(rng, caps.target);
        const LESRecord rec = build_and_verify_les(d, i, j, tri, y);
        outcomes[t] = {rec.transport_certified && rec.all_exact,
                       rec.failure ? *rec.failure : "inexact"};
    });
    for (int t = 0; t < trials; ++t)
        result.record(t, outcomes[t].first, outcomes[t].second);
    return result;
}

/// Visibility suite: witness soundness (every returned witness has P != 0 and
/// a distinguished triangle) and degree-0 completeness (a nonzero q^0
/// coefficient forces a witness).
inline SuiteResult run_visibility_suite(std::uint64_t seed, int trials,
                                        const std::optional<MTTDatum>& fixed = std::nullopt) {
    const detail::SuiteCaps caps;
    SuiteResult result;
    result.name = "visibility";
    std::vector<std::pair<bool, std::string>> outcomes(trials, {false, ""});
    parallel_for(trials, [&](int t) {
        Rng rng = Rng::for_trial(seed ^ 0x76697369ULL, static_cast<std::uint64_t>(t));
        BoundedComplex x, l;
        if (fixed) {
            const auto [i, j] = detail::cycle_channel(*fixed, t);
            x = transported_probe(*fixed, i, j);
            l = fixed->probes[j - 1];
        } else {
            x = random_complex(rng, caps.target);
            l = random_complex(rng, caps.target);
        }
        const LaurentPoly p = poincare(x, l);
        const auto witness = find_right_visibility(x, l);
        bool ok = true;
        std::string what;
        if (witness) {
            if (p.is_zero()) {
                ok = false;
                what = "witness returned but P = 0";
            } else if (!is_distinguished(witness->triangle)) {
                ok = false;
                what = "witness triangle not distinguished";
            }
        }
        if (ok && p.coeff(0) != 0 && !witness) {
            ok = false;
            what = "nonzero q^0 coefficient but no witness";
        }
        // Left search soundness on the mirrored pair.
        if (ok) {
            const auto left = find_left_visibility(l, x);
            if (left && poincare(l, x).is_zero()) {
                ok = false;
                what = "left witness returned but RHom(L, X) = 0";
            }
        }
        outcomes[t] = {ok, what};
    });
    for (int t = 0; t < trials; ++t)
        result.record(t, outcomes[t].first, outcomes[t].second);
    return result;
}

/// Bridge suite: every channel of every datum must report
/// bridge_consistent = 1, with the report invariants intact.
inline SuiteResult run_bridge_suite(std::uint64_t seed, int trials,
                                    const std::optional<MTTDatum>& fixed = std::nullopt) {
    const detail::SuiteCaps caps;
    SuiteResult result;
    result.name = "bridge";
    std::vector<std::pair<bool, std::string>> outcomes(trials, {false, ""});
    parallel_for(trials, [&](int t) {
        const MTTDatum d = detail::suite_datum(seed ^ 0x62726964ULL, t, caps, fixed);
        bool ok = true;
        std::string what;
        for (const ChannelReport& rep : bridge_verdict(d)) {
            if (rep.h_nonzero != (rep.p.is_zero() ? 0 : 1)) {
                ok = false;
                what = "H_nonzero bit inconsistent with P";
                break;
            }
            if (rep.bridge_consistent != 1) {
                ok = false;
                what = "channel (" + std::to_string(rep.channel_i) + "," +
                       std::to_string(rep.channel_j) + ") flagged inconsistent";
                break;
            }
        }
        outcomes[t] = {ok, what};
    });
    for (int t = 0; t < trials; ++t)
        result.record(t, outcomes[t].first, outcomes[t].second);
    return result;
}

/// chi-additivity over random triangles, channel by channel.
inline SuiteResult run_euler_suite(std::uint64_t seed, int trials,
                                   const std::optional<MTTDatum>& fixed = std::nullopt) {
    const detail::SuiteCaps caps;
    SuiteResult result;
    result.name = "euler";
    std::vector<std::pair<bool, std::string>> outcomes(trials, {false, ""});
    parallel_for(trials, [&](int t) {
        Rng rng = Rng::for_trial(seed ^ 0x65756c65ULL, static_cast<std::uint64_t>(t));
        const MTTDatum d = detail::suite_datum(seed ^ 0x65756c65ULL, t, caps, fixed);
        const auto [i, j] = detail::cycle_channel(d, t);
        const BoundedComplex xprime = random_complex(rng, caps.triangle);
        const BoundedComplex x = random_complex(rng, caps.triangle);
        const ChainMap f = random_chain_map(xprime, x, rng);
        const Triangle tri = cone_triangle(f);
        const BoundedComplex y = random_complex(rng, caps.target);
        outcomes[t] = {euler_additivity_check(d, i, j, tri, y), "chi additivity failed"};
    });
    for (int t = 0; t < trials; ++t)
        result.record(t, outcomes[t].first, outcomes[t].second);
    return result;
}

/// Oracle suite: the Kunneth-only route must reproduce every interaction
/// polynomial exactly, on all channels.
inline SuiteResult run_oracle_suite(std::uint64_t seed, int trials,
                                    const std::optional<MTTDatum>& fixed = std::nullopt) {
    const detail::SuiteCaps caps;
    SuiteResult result;
    result.name = "oracle";
    std::vector<std::pair<bool, std::string>> outcomes(trials, {false, ""});
    parallel_for(trials, [&](int t) {
        const MTTDatum d = detail::suite_datum(seed ^ 0x6f72616300ULL, t, caps, fixed);
        bool ok = true;
        std::string what;
        for (int i = 1; i <= d.size() && ok; ++i)
            for (int j = 1; j <= d.size() && ok; ++j)
                if (semisimple_oracle(d, i, j) != interaction_polynomial(d, i, j)) {
                    ok = false;
                    what = "oracle mismatch on channel (" + std::to_string(i) + "," +
                           std::to_string(j) + ")";
                }
        outcomes[t] = {ok, what};
    });
    for (int t = 0; t < trials; ++t)
        result.record(t, outcomes[t].first, outcomes[t].second);
    return result;
}

inline std::vector<SuiteResult> run_suites(const std::string& selector, std::uint64_t seed,
                                           int trials,
                                           const std::optional<MTTDatum>& fixed = std::nullopt) {
    std::vector<SuiteResult> results;
    const bool all = selector == "all";
    if (all || selector == "les")
        results.push_back(run_les_suite(seed, trials, fixed));
    if (all || selector == "visibility")
        results.push_back(run_visibility_suite(seed, trials, fixed));
    if (all || selector == "bridge")
        results.push_back(run_bridge_suite(seed, trials, fixed));
    if (all || selector == "euler")
        results.push_back(run_euler_suite(seed, trials, fixed));
    if (all || selector == "oracle")
        results.push_back(run_oracle_suite(seed, trials, fixed));
    if (results.empty())
        throw std::invalid_argument("unknown suite '" + selector +
                                    "': expected les|visibility|bridge|euler|oracle|all");
    return results;
}

}  // namespace mtt
