#include "mtt/checks.hpp"
#include "mtt/models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mtt;

namespace {

MTTDatum unit_datum() { return detail::unit_datum({"n1", "n2"}); }

/// The LES rank identity, re-asserted directly on a record.
void check_rank_identity(const LESRecord& rec) {
    for (std::size_t p = 1; p + 1 < rec.spaces.size(); ++p)
        CHECK(rank(rec.maps[p - 1]) + rank(rec.maps[p]) == rec.spaces[p].dim);
}

}  // namespace

TEST_CASE("LES of the identity triangle: isomorphisms everywhere") {
    Rng rng(201);
    const MTTDatum d = unit_datum();
    const BoundedComplex x = random_complex(rng, {-2, 2, 4});
    const Triangle t = cone_triangle(ChainMap::identity(x));  // (X, X, ~0)
    const BoundedComplex y = random_complex(rng, {-1, 1, 3});
    const LESRecord rec = build_and_verify_les(d, 1, 2, t, y);
    CHECK(rec.transport_certified);
    CHECK(rec.all_exact);
    check_rank_identity(rec);
}

TEST_CASE("LES of a split triangle breaks into short exact pieces") {
    Rng rng(202);
    const MTTDatum d = unit_datum();
    const BoundedComplex x = random_complex(rng, {-2, 2, 4});
    const BoundedComplex z = random_complex(rng, {-2, 2, 4});
    const Triangle t = cone_triangle(ChainMap::zero(x, z));
    const BoundedComplex y = random_complex(rng, {-1, 1, 3});
    const LESRecord rec = build_and_verify_les(d, 1, 2, t, y);
    CHECK(rec.transport_certified);
    CHECK(rec.all_exact);
    check_rank_identity(rec);
}

TEST_CASE("LES property run over random triangles and channels") {
    for (int trial = 0; trial < 12; ++trial) {
        Rng rng = Rng::for_trial(333, trial);
        const GeneratorSpec spec{"les", 333ULL + trial, 3, -1, 1, 2};
        const MTTDatum d = gen_random(spec);
        const int i = trial % 2 + 1, j = (trial / 2) % 2 + 1;
        const BoundedComplex xp = random_complex(rng, {-3, 3, 5});
        const BoundedComplex x = random_complex(rng, {-3, 3, 5});
        const ChainMap f = random_chain_map(xp, x, rng);
        const BoundedComplex y = random_complex(rng, {-1, 1, 3});
        const LESRecord rec = build_and_verify_les(d, i, j, cone_triangle(f), y);
        CHECK(rec.transport_certified);
        CHECK(rec.all_exact);
        if (!rec.all_exact && rec.failure)
            FAIL_CHECK(*rec.failure);
    }
}

TEST_CASE("LES works for rotated (witnessed) input triangles too") {
    Rng rng(204);
    const MTTDatum d = unit_datum();
    const BoundedComplex x = random_complex(rng, {-1, 1, 3});
    const BoundedComplex l = random_complex(rng, {-1, 1, 3});
    const ChainMap u = random_chain_map(x, l, rng);
    const Triangle rot = rotate_cone_triangle(cone_triangle(u));
    const BoundedComplex y = random_complex(rng, {-1, 1, 3});
    const LESRecord rec = build_and_verify_les(d, 1, 2, rot, y);
    CHECK(rec.all_exact);
}

TEST_CASE("euler additivity check") {
    Rng rng(205);
    const MTTDatum d = unit_datum();
    SECTION("split triangle: additivity is the direct-sum identity") {
        const BoundedComplex x = random_complex(rng, {-2, 2, 4});
        const BoundedComplex z = random_complex(rng, {-2, 2, 4});
        const Triangle t = cone_triangle(ChainMap::zero(x, z));
        CHECK(euler_additivity_check(d, 1, 2, t, random_complex(rng, {-1, 1, 3})));
    }
    SECTION("identity triangle: the cone term contributes zero") {
        const BoundedComplex x = random_complex(rng, {-2, 2, 4});
        const Triangle t = cone_triangle(ChainMap::identity(x));
        CHECK(euler_additivity_check(d, 1, 2, t, random_complex(rng, {-1, 1, 3})));
    }
    SECTION("random triangles") {
        for (int trial = 0; trial < 10; ++trial) {
            const BoundedComplex xp = random_complex(rng, {-2, 2, 4});
            const BoundedComplex x = random_complex(rng, {-2, 2, 4});
            const ChainMap f = random_chain_map(xp, x, rng);
            CHECK(euler_additivity_check(d, 1, 1, cone_triangle(f),
                                         random_complex(rng, {-1, 1, 3})));
        }
    }
}

TEST_CASE("right visibility on the stated examples") {
    SECTION("X = L yields a witness (the identity class)") {
        const BoundedComplex l = BoundedComplex::point(0, 2);
        const auto w = find_right_visibility(l, l);
        REQUIRE(w.has_value());
        CHECK(w->kind == VisibilityWitness::Kind::right);
        CHECK(is_distinguished(w->triangle));
        CHECK(w->complement == shift(cone_complex(w->map), -1));
        CHECK_FALSE(poincare(l, l).is_zero());
    }
    SECTION("acyclic split complex yields none") {
        Rng rng(206);
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const BoundedComplex contractible = cone_triangle(ChainMap::identity(x)).third;
        CHECK_FALSE(find_right_visibility(contractible, BoundedComplex::point(0)).has_value());
    }
    SECTION("transported probe of the visibility demo") {
        const MTTDatum d = gen_visibility_right_demo();
        const auto w = find_right_visibility(transported_probe(d, 1, 2), d.probes[1]);
        REQUIRE(w.has_value());
        CHECK_FALSE(interaction_polynomial(d, 1, 2).is_zero());
    }
}

TEST_CASE("visibility soundness and degree-0 completeness on random instances") {
    for (int trial = 0; trial < 25; ++trial) {
        Rng rng = Rng::for_trial(444, trial);
        const BoundedComplex x = random_complex(rng, {-2, 2, 3});
        const BoundedComplex l = random_complex(rng, {-2, 2, 3});
        const LaurentPoly p = poincare(x, l);
        const auto w = find_right_visibility(x, l);
        if (w) {
            CHECK_FALSE(p.is_zero());
            CHECK(is_distinguished(w->triangle));
            CHECK_FALSE(validate_chain_map(w->map).has_value());
        }
        if (p.coeff(0) != 0)
            CHECK(w.has_value());
        // Shifted probes L[k] certify the q^k coefficient.
        for (int k = -1; k <= 1; ++k)
            if (p.coeff(k) != 0)
                CHECK(find_right_visibility(x, shift(l, k)).has_value());
    }
}

TEST_CASE("left visibility") {
    SECTION("X = L yields the identity witness") {
        const BoundedComplex l = BoundedComplex::point(0);
        const auto w = find_left_visibility(l, l);
        REQUIRE(w.has_value());
        CHECK(w->kind == VisibilityWitness::Kind::left);
        CHECK(is_distinguished(w->triangle));
    }
    SECTION("no classes, no witness") {
        // RHom(point(0), point(5)) sits in degree 5, no degree-0 class.
        CHECK_FALSE(
            find_left_visibility(BoundedComplex::point(0), BoundedComplex::point(5)).has_value());
    }
    SECTION("left demo: witness exists, right-variance polynomial reported separately") {
        const MTTDatum d = gen_visibility_left_demo();
        const BoundedComplex x = transported_probe(d, 1, 2);
        const auto w = find_left_visibility(d.probes[1], x);
        REQUIRE(w.has_value());
        CHECK_FALSE(poincare(d.probes[1], x).is_zero());
        // The right-variance value is computed independently; no implication
        // in either direction is asserted.
        (void)interaction_polynomial(d, 1, 2);
    }
}

TEST_CASE("content check on the stated examples") {
    SECTION("unit shadow with Q_j equal to the transported probe") {
        const MTTDatum d = unit_datum();
        CHECK(content_check(d, 1, 2) == std::pair<bool, bool>{true, true});
    }
    SECTION("acyclic shadow image") {
        MTTDatum d = unit_datum();
        // Shadow kernel an acyclic interval: every shadow image is acyclic,
        // and compatibility forces the zero shadow object.
        d.shadow_kernels[1].kernel = BoundedComplex({{0, 1}, {1, 1}}, {{0, Mat::identity(1)}});
        d.shadow_objects[1] = BoundedComplex::zero_object();
        REQUIRE(validate_datum(d).empty());
        CHECK(content_check(d, 1, 2) == std::pair<bool, bool>{false, false});
    }
    SECTION("bridge demo matches the semisimple expectation") {
        const MTTDatum d = gen_bridge_demo();
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const BoundedComplex s =
                    apply(d.shadow_kernels[j - 1], transported_probe(d, i, j));
                const auto hs = homology_dims(s);
                const auto hq = homology_dims(d.shadow_objects[j - 1]);
                const bool expect = !hs.empty() && !hq.empty();
                CHECK(content_check(d, i, j) == std::pair<bool, bool>{expect, expect});
            }
    }
}

TEST_CASE("detector check") {
    const MTTDatum d = unit_datum();
    CHECK(detector_check(d, 1, 2));
    MTTDatum acyclic = unit_datum();
    acyclic.phi[0].kernel = BoundedComplex({{0, 1}, {1, 1}}, {{0, Mat::identity(1)}});
    CHECK_FALSE(detector_check(acyclic, 1, 2));
    // Definitionally equal paths agree.
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(detector_check(d, i, j) == !interaction_polynomial(d, i, j).is_zero());
}

TEST_CASE("bridge verdict") {
    SECTION("all-unit datum: every channel consistent with P = 1") {
        const auto reports = bridge_verdict(unit_datum());
        REQUIRE(reports.size() == 4);
        for (const auto& rep : reports) {
            CHECK(rep.supported == 1);
            CHECK(rep.content_left_nonzero == 1);
            CHECK(rep.detector_holds_at_probe == 1);
            CHECK(rep.h_nonzero == 1);
            CHECK(rep.p == LaurentPoly::monomial(1, 0));
            CHECK(rep.bridge_consistent == 1);
        }
    }
    SECTION("supported channel with acyclic transported probe is vacuously consistent") {
        MTTDatum d = unit_datum();
        d.phi[0].kernel = BoundedComplex({{0, 1}, {1, 1}}, {{0, Mat::identity(1)}});
        REQUIRE(validate_datum(d).empty());
        const auto reports = bridge_verdict(d);
        const auto& rep12 = reports[1];  // (1,2) in lexicographic order
        CHECK(rep12.channel_i == 1);
        CHECK(rep12.channel_j == 2);
        CHECK(rep12.supported == 1);
        CHECK(rep12.content_left_nonzero == 0);
        CHECK(rep12.content_right_nonzero == 0);
        CHECK(rep12.detector_holds_at_probe == 0);
        CHECK(rep12.h_nonzero == 0);
        CHECK(rep12.bridge_consistent == 1);
    }
    SECTION("bridge demo: every supported channel passes with P != 0") {
        for (const auto& rep : bridge_verdict(gen_bridge_demo())) {
            CHECK(rep.supported == 1);
            CHECK((rep.content_left_nonzero || rep.content_right_nonzero));
            CHECK(rep.detector_holds_at_probe == 1);
            CHECK(rep.h_nonzero == 1);
            CHECK(rep.bridge_consistent == 1);
        }
    }
    SECTION("reports are ordered lexicographically") {
        const auto reports = bridge_verdict(unit_datum());
        CHECK(reports[0].channel_i == 1);
        CHECK(reports[0].channel_j == 1);
        CHECK(reports[1].channel_j == 2);
        CHECK(reports[2].channel_i == 2);
        CHECK(reports[3].channel_j == 2);
    }
}
