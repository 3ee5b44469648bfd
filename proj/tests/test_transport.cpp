#include "mtt/rng.hpp"
#include "mtt/transport.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mtt;

namespace {

TransportKernel random_kernel(Rng& rng, const ComplexCaps& caps, const std::string& label) {
    return TransportKernel{random_complex(rng, caps), label, "a", "b"};
}

}  // namespace

TEST_CASE("apply: unit kernel is the identity on objects") {
    Rng rng(101);
    const BoundedComplex x = random_complex(rng, {-2, 2, 3});
    const TransportKernel unit = TransportKernel::unit("U", "a", "b");
    CHECK(apply(unit, x) == x);
}

TEST_CASE("apply: degree -1 kernel shifts homology by one degree") {
    Rng rng(102);
    const BoundedComplex x = random_complex(rng, {-2, 2, 3});
    const TransportKernel k{BoundedComplex::point(-1), "S", "a", "b"};
    CHECK(homology_dims(apply(k, x)) == homology_dims(shift(x, 1)));
}

TEST_CASE("apply satisfies Kunneth on random kernels") {
    Rng rng(103);
    for (int trial = 0; trial < 6; ++trial) {
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        std::map<int, int> expected;
        for (const auto& [p, dk] : homology_dims(k.kernel))
            for (const auto& [q, dx] : homology_dims(x))
                expected[p + q] += dk * dx;
        for (auto it = expected.begin(); it != expected.end();)
            it = it->second == 0 ? expected.erase(it) : std::next(it);
        CHECK(homology_dims(apply(k, x)) == expected);
    }
}

TEST_CASE("sector discipline") {
    const TransportKernel k = TransportKernel::unit("U", "local:1", "bulk");
    const BoundedComplex x = BoundedComplex::point(0);
    CHECK(apply_in_sector(k, x, "local:1") == x);
    CHECK_THROWS_AS(apply_in_sector(k, x, "bulk"), WiringError);
    const TransportKernel j = TransportKernel::unit("V", "bulk", "local:2");
    CHECK_FALSE(compose(j, k).kernel.is_zero_object());
    CHECK_THROWS_AS(compose(k, j), WiringError);
}

TEST_CASE("apply_to_map: identities and functoriality") {
    Rng rng(104);
    const TransportKernel unit = TransportKernel::unit("U", "a", "b");
    for (int trial = 0; trial < 5; ++trial) {
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const BoundedComplex y = random_complex(rng, {-1, 1, 3});
        const BoundedComplex z = random_complex(rng, {-1, 1, 3});
        const ChainMap f = random_chain_map(x, y, rng);
        const ChainMap g = random_chain_map(y, z, rng);

        CHECK(apply_to_map(k, ChainMap::identity(x)) == ChainMap::identity(apply(k, x)));
        CHECK(apply_to_map(unit, f) == f);

        const ChainMap kf = apply_to_map(k, f);
        CHECK_FALSE(validate_chain_map(kf).has_value());

        // Composition is preserved with exact matrix equality.
        CHECK(apply_to_map(k, compose(g, f)) == compose(apply_to_map(k, g), kf));
    }
}

TEST_CASE("compose behaves as the composite on objects") {
    Rng rng(105);
    const TransportKernel unit_ab = TransportKernel::unit("U", "a", "b");
    const TransportKernel unit_bc = TransportKernel::unit("V", "b", "c");
    TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
    k.source_sector = "b";
    k.target_sector = "c";
    const BoundedComplex x = random_complex(rng, {-1, 1, 3});

    CHECK(homology_dims(apply(compose(k, unit_ab), x)) == homology_dims(apply(k, x)));
    TransportKernel k2 = k;
    k2.source_sector = "a";
    k2.target_sector = "b";
    CHECK(homology_dims(apply(compose(unit_bc, k2), x)) == homology_dims(apply(k2, x)));
}

TEST_CASE("associativity isomorphism is an exact degreewise chain iso") {
    Rng rng(106);
    for (int trial = 0; trial < 5; ++trial) {
        TransportKernel k1 = random_kernel(rng, {-1, 1, 2}, "K1");
        TransportKernel k2 = random_kernel(rng, {-1, 1, 2}, "K2");
        k1.source_sector = "a";
        k1.target_sector = "b";
        k2.source_sector = "b";
        k2.target_sector = "c";
        const BoundedComplex x = random_complex(rng, {-1, 1, 2});

        const ChainMap iso = associativity_iso(k2, k1, x);
        CHECK_FALSE(validate_chain_map(iso).has_value());
        for (const auto& [n, m] : iso.comps()) {
            (void)n;
            REQUIRE(m.rows() == m.cols());
            CHECK(rank(m) == m.rows());
        }
        CHECK(is_quasi_iso(iso));

        // Both bracketings have equal homology.
        CHECK(homology_dims(apply(compose(k2, k1), x)) ==
              homology_dims(apply(k2, apply(k1, x))));
    }
}

TEST_CASE("threefold associativity of homology dims") {
    Rng rng(107);
    TransportKernel a = random_kernel(rng, {-1, 0, 2}, "A");
    TransportKernel b = random_kernel(rng, {-1, 0, 2}, "B");
    TransportKernel c = random_kernel(rng, {0, 1, 2}, "C");
    a.source_sector = "s1";
    a.target_sector = "s2";
    b.source_sector = "s2";
    b.target_sector = "s3";
    c.source_sector = "s3";
    c.target_sector = "s4";
    const BoundedComplex x = random_complex(rng, {-1, 1, 2});
    CHECK(homology_dims(apply(compose(compose(c, b), a), x)) ==
          homology_dims(apply(compose(c, compose(b, a)), x)));
}

TEST_CASE("shift comparison is a chain iso") {
    Rng rng(108);
    for (int trial = 0; trial < 5; ++trial) {
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const ChainMap cmp = shift_comparison(k, x);
        CHECK_FALSE(validate_chain_map(cmp).has_value());
        for (const auto& [n, m] : cmp.comps()) {
            (void)n;
            REQUIRE(m.rows() == m.cols());
            CHECK(rank(m) == m.rows());
        }
    }
}

TEST_CASE("certify_exactness on the stated examples") {
    Rng rng(109);
    SECTION("identity map: both sides acyclic, certificate succeeds") {
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const auto cert = certify_exactness(k, ChainMap::identity(x));
        CHECK(cert.ok);
        CHECK(homology_dims(cone_complex(apply_to_map(k, ChainMap::identity(x)))).empty());
    }
    SECTION("unit kernel: identity certificate") {
        const TransportKernel unit = TransportKernel::unit("U", "a", "b");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const BoundedComplex y = random_complex(rng, {-1, 1, 3});
        const ChainMap f = random_chain_map(x, y, rng);
        const auto cert = certify_exactness(unit, f);
        CHECK(cert.ok);
        for (const auto& [n, m] : cert.iso.comps()) {
            (void)n;
            CHECK(m == Mat::identity(m.rows()));
        }
    }
    SECTION("random kernels and maps, dims <= 4 over [-2, 2]") {
        for (int trial = 0; trial < 20; ++trial) {
            const TransportKernel k = random_kernel(rng, {-2, 2, 4}, "K");
            const BoundedComplex x = random_complex(rng, {-2, 2, 4});
            const BoundedComplex y = random_complex(rng, {-2, 2, 4});
            const ChainMap f = random_chain_map(x, y, rng);
            const auto cert = certify_exactness(k, f);
            CHECK(cert.ok);
            CHECK(cert.chain_map_ok);
            CHECK(cert.iso_ok);
        }
    }
}

TEST_CASE("transported triangles are distinguished") {
    Rng rng(110);
    for (int trial = 0; trial < 6; ++trial) {
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const BoundedComplex y = random_complex(rng, {-1, 1, 3});
        const ChainMap f = random_chain_map(x, y, rng);
        const Triangle t = cone_triangle(f);
        const Triangle kt = transport_triangle(k, t);
        CHECK_FALSE(validate_chain_map(kt.map_a).has_value());
        CHECK_FALSE(validate_chain_map(kt.map_b).has_value());
        CHECK_FALSE(validate_chain_map(kt.map_c).has_value());
        CHECK(is_distinguished(kt));
    }
}

TEST_CASE("transport of a rotated (witnessed) triangle stays distinguished") {
    Rng rng(111);
    const TransportKernel k = random_kernel(rng, {-1, 0, 2}, "K");
    const BoundedComplex x = random_complex(rng, {-1, 1, 2});
    const BoundedComplex l = random_complex(rng, {-1, 1, 2});
    const ChainMap u = random_chain_map(x, l, rng);
    const Triangle rot = rotate_cone_triangle(cone_triangle(u));
    const Triangle krot = transport_triangle(k, rot);
    CHECK(is_distinguished(krot));
}

TEST_CASE("apply preserves acyclicity") {
    Rng rng(112);
    const BoundedComplex x = random_complex(rng, {-1, 1, 3});
    const BoundedComplex contractible = cone_triangle(ChainMap::identity(x)).third;
    for (int trial = 0; trial < 4; ++trial) {
        const TransportKernel k = random_kernel(rng, {-2, 2, 3}, "K");
        CHECK(homology_dims(apply(k, contractible)).empty());
    }
}

TEST_CASE("apply is additive up to the canonical reordering") {
    Rng rng(113);
    for (int trial = 0; trial < 5; ++trial) {
        const TransportKernel k = random_kernel(rng, {-1, 1, 2}, "K");
        const BoundedComplex x = random_complex(rng, {-1, 1, 3});
        const BoundedComplex y = random_complex(rng, {-1, 1, 3});
        const ChainMap iso = additivity_iso(k, x, y);
        CHECK_FALSE(validate_chain_map(iso).has_value());
        for (const auto& [n, m] : iso.comps()) {
            (void)n;
            REQUIRE(m.rows() == m.cols());
            CHECK(rank(m) == m.rows());
        }
    }
}
