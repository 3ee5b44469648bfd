#include "mtt/datum.hpp"
#include "mtt/models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mtt;

namespace {

MTTDatum unit_datum() { return detail::unit_datum({"n1", "n2"}); }

}  // namespace

TEST_CASE("validate_datum accepts the generated data") {
    CHECK(validate_datum(unit_datum()).empty());
    CHECK(validate_datum(gen_bridge_demo()).empty());
    CHECK(validate_datum(gen_directedness_witness()).empty());
}

TEST_CASE("validate_datum rejects broken wiring and shapes") {
    SECTION("wrong kernel target sector") {
        MTTDatum d = unit_datum();
        d.psi[0].target_sector = "local:n2";
        const auto diags = validate_datum(d);
        REQUIRE_FALSE(diags.empty());
        CHECK(diags[0].where.find("psi") != std::string::npos);
    }
    SECTION("support entries must be bits") {
        MTTDatum d = unit_datum();
        d.support[0][1] = 2;
        REQUIRE_FALSE(validate_datum(d).empty());
    }
    SECTION("state arrays must match the node count") {
        MTTDatum d = unit_datum();
        d.state.c_sigma.pop_back();
        REQUIRE_FALSE(validate_datum(d).empty());
    }
    SECTION("probe-shadow incompatibility is reported per node") {
        MTTDatum d = unit_datum();
        d.shadow_objects[1] = BoundedComplex::point(5);  // wrong homology
        const auto diags = validate_datum(d);
        REQUIRE_FALSE(diags.empty());
        CHECK(diags[0].where == "shadow_objects[n2]");
    }
    SECTION("duplicate nodes") {
        MTTDatum d = unit_datum();
        d.nodes[1] = "n1";
        REQUIRE_FALSE(validate_datum(d).empty());
    }
}

TEST_CASE("transported_probe on the stated examples") {
    SECTION("unit kernels return the probe") {
        const MTTDatum d = unit_datum();
        CHECK(transported_probe(d, 1, 2) == d.probes[0]);
    }
    SECTION("a degree -1 psi kernel shifts homology by one degree") {
        MTTDatum d = unit_datum();
        d.psi[1].kernel = BoundedComplex::point(-1);
        CHECK(homology_dims(transported_probe(d, 1, 2)) ==
              homology_dims(shift(d.probes[0], 1)));
    }
    SECTION("Kunneth dims for random kernels") {
        const GeneratorSpec spec{"t", 42, 3, -1, 1, 2};
        const MTTDatum d = gen_random(spec);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                std::map<int, int> expected;
                for (const auto& [p, a] : homology_dims(d.psi[j - 1].kernel))
                    for (const auto& [q, b] : homology_dims(d.phi[i - 1].kernel))
                        for (const auto& [s, c] : homology_dims(d.probes[i - 1]))
                            expected[p + q + s] += a * b * c;
                for (auto it = expected.begin(); it != expected.end();)
                    it = it->second == 0 ? expected.erase(it) : std::next(it);
                CHECK(homology_dims(transported_probe(d, i, j)) == expected);
            }
    }
    SECTION("index range is enforced") {
        CHECK_THROWS_AS(transported_probe(unit_datum(), 0, 1), std::out_of_range);
        CHECK_THROWS_AS(transported_probe(unit_datum(), 1, 3), std::out_of_range);
    }
}

TEST_CASE("interaction complex and polynomial on the stated examples") {
    SECTION("all unit kernels and point probes") {
        const MTTDatum d = unit_datum();
        CHECK(homology_dims(interaction_complex(d, 1, 2)) == std::map<int, int>{{0, 1}});
        CHECK(interaction_polynomial(d, 1, 2) == LaurentPoly::monomial(1, 0));
    }
    SECTION("acyclic transported probe gives an acyclic interaction complex") {
        MTTDatum d = unit_datum();
        d.phi[0].kernel = BoundedComplex({{0, 1}, {1, 1}}, {{0, Mat::identity(1)}});
        CHECK(homology_dims(transported_probe(d, 1, 2)).empty());
        CHECK(homology_dims(interaction_complex(d, 1, 2)).empty());
        CHECK(interaction_polynomial(d, 1, 2).is_zero());
    }
    SECTION("bridge demo dims match the semisimple oracle") {
        const MTTDatum d = gen_bridge_demo();
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                CHECK(interaction_polynomial(d, i, j) == semisimple_oracle(d, i, j));
    }
}

TEST_CASE("graded matrix") {
    SECTION("one node, unit kernels, point probe") {
        const MTTDatum d = detail::unit_datum({"n1"});
        const GradedInteractionMatrix m = graded_matrix(d);
        CHECK(m.size == 1);
        CHECK(m.at(1, 1) == LaurentPoly::monomial(1, 0));
    }
    SECTION("directedness witness has asymmetric entries") {
        const GradedInteractionMatrix m = graded_matrix(gen_directedness_witness());
        CHECK(m.at(1, 2) != m.at(2, 1));
        CHECK_FALSE(m.at(1, 2).is_zero());
        CHECK_FALSE(m.at(2, 1).is_zero());
    }
    SECTION("bridge demo matrix equals the oracle matrix") {
        const MTTDatum d = gen_bridge_demo();
        const GradedInteractionMatrix m = graded_matrix(d);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                CHECK(m.at(i, j) == semisimple_oracle(d, i, j));
    }
}

TEST_CASE("inherited package") {
    const MTTDatum d = gen_bridge_demo();
    const InheritedPackage pkg = inherited_package(d);
    SECTION("specializations satisfy w_tot >= |w_chi| entrywise") {
        for (const auto& [wtot, wchi] : pkg.specializations)
            CHECK(wtot >= (wchi < 0 ? -wchi : wchi));
    }
    SECTION("single-degree channel gives (d, (-1)^m0 d)") {
        const InheritedPackage sp = inherited_package(gen_single_degree(2, -1));
        CHECK(sp.spec_at(1, 2) == std::pair<std::int64_t, std::int64_t>{2, -2});
        const InheritedPackage sp2 = inherited_package(gen_single_degree(3, 2));
        CHECK(sp2.spec_at(1, 2) == std::pair<std::int64_t, std::int64_t>{3, 3});
    }
    SECTION("derived nonvanishing bits follow the graded matrix") {
        const auto bits = derived_nonvanishing(pkg.graded);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                CHECK(bits[i - 1][j - 1] == (pkg.graded.at(i, j).is_zero() ? 0 : 1));
    }
}

TEST_CASE("induced profunctor maps") {
    Rng rng(77);
    MTTDatum d = unit_datum();
    d.probes[0] = random_complex(rng, {-1, 1, 3});
    d.shadow_objects[0] = homology_model(d.probes[0]).first;
    d.probes[1] = random_complex(rng, {-1, 1, 3});
    d.shadow_objects[1] = homology_model(d.probes[1]).first;
    REQUIRE(validate_datum(d).empty());

    const BoundedComplex x = d.probes[0];
    const BoundedComplex y = d.probes[1];

    SECTION("identities induce identities, zero induces zero") {
        const auto [contra, co] = induced_profunctor_maps(d, 1, 2, ChainMap::identity(x),
                                                          ChainMap::identity(y));
        for (const auto& [n, m] : contra.comps) {
            (void)n;
            CHECK(m == Mat::identity(m.rows()));
        }
        for (const auto& [n, m] : co.comps) {
            (void)n;
            CHECK(m == Mat::identity(m.rows()));
        }
        const auto [contra0, co0] =
            induced_profunctor_maps(d, 1, 2, ChainMap::zero(x, x), ChainMap::identity(y));
        for (const auto& [n, m] : contra0.comps) {
            (void)n;
            CHECK(m.is_zero());
        }
    }

    SECTION("contravariant functoriality on generated instances") {
        const BoundedComplex xpp = random_complex(rng, {-1, 1, 3});
        const BoundedComplex xp = random_complex(rng, {-1, 1, 3});
        const ChainMap f2 = random_chain_map(xpp, xp, rng);  // X'' -> X'
        const ChainMap f1 = random_chain_map(xp, x, rng);    // X' -> X
        const ChainMap g = ChainMap::identity(y);

        const auto [ind_f1, co1] = induced_profunctor_maps(d, 1, 2, f1, g);
        // Base point of f2's channel is (X', Y).
        const auto [ind_f2, co2] = induced_profunctor_maps(d, 1, 2, f2, g);
        const auto [ind_comp, co3] = induced_profunctor_maps(d, 1, 2, compose(f1, f2), g);

        for (const auto& [n, lhs] : ind_comp.comps) {
            if (lhs.rows() == 0 || lhs.cols() == 0)
                continue;
            REQUIRE(ind_f1.comps.count(n));
            REQUIRE(ind_f2.comps.count(n));
            CHECK(lhs == matmul(ind_f2.comps.at(n), ind_f1.comps.at(n)));
        }
    }
}

TEST_CASE("channel computations are deterministic") {
    const GeneratorSpec spec{"rep", 123, 3, -1, 1, 2};
    const MTTDatum d1 = gen_random(spec);
    const MTTDatum d2 = gen_random(spec);
    const InheritedPackage p1 = inherited_package(d1);
    const InheritedPackage p2 = inherited_package(d2);
    CHECK(p1 == p2);
}
