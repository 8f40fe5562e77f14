#include <doctest.h>

#include "qnull/gf.hpp"

using namespace qnull;

TEST_CASE("addition examples") {
    const auto& f4 = FieldSpec::get(4);
    CHECK(f4.add(0, 2) == 2);
    CHECK(FieldSpec::get(2).add(1, 1) == 0);
    // (x+1) + (2x+2) = 0 in GF(9)
    CHECK(FieldSpec::get(9).add(4, 8) == 0);
}

TEST_CASE("multiplication and inverse examples") {
    const auto& f4 = FieldSpec::get(4);
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f4.inv(2) == 3);
    CHECK(FieldSpec::get(3).mul(2, 2) == 1);
    CHECK(FieldSpec::get(3).inv(2) == 2);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const auto& f = FieldSpec::get(q);
        CHECK(f.inv(1) == 1);
        for (unsigned a = 0; a < q; ++a) CHECK(f.mul(static_cast<Code>(a), 1) == a);
    }
}

TEST_CASE("inverse of zero is a domain error") {
    CHECK_THROWS_AS(FieldSpec::get(5).inv(0), FieldError);
    CHECK_THROWS_AS(gf_inv(GfElement(FieldSpec::get(4), 0)), FieldError);
}

TEST_CASE("element wrappers reject mixed fields") {
    const GfElement a(FieldSpec::get(4), 2);
    const GfElement b(FieldSpec::get(2), 1);
    CHECK_THROWS_AS(gf_add(a, b), FieldError);
    CHECK_THROWS_AS(gf_mul(a, b), FieldError);
    CHECK(gf_mul(a, a) == GfElement(FieldSpec::get(4), 3));
    CHECK(gf_add(a, GfElement(FieldSpec::get(4), 0)) == a);
    CHECK_THROWS_AS(GfElement(FieldSpec::get(4), 4), FieldError);
}

TEST_CASE("field axioms hold exhaustively") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u}) {
        CAPTURE(q);
        const auto& f = FieldSpec::get(q);
        bool ok = true;
        for (unsigned a = 0; a < q; ++a) {
            const auto ca = static_cast<Code>(a);
            ok = ok && f.add(ca, 0) == ca && f.add(ca, f.neg(ca)) == 0;
            if (a) ok = ok && f.mul(ca, f.inv(ca)) == 1;
            for (unsigned b = 0; b < q; ++b) {
                const auto cb = static_cast<Code>(b);
                ok = ok && f.add(ca, cb) == f.add(cb, ca) && f.mul(ca, cb) == f.mul(cb, ca);
                for (unsigned c = 0; c < q; ++c) {
                    const auto cc = static_cast<Code>(c);
                    ok = ok && f.add(f.add(ca, cb), cc) == f.add(ca, f.add(cb, cc));
                    ok = ok && f.mul(f.mul(ca, cb), cc) == f.mul(ca, f.mul(cb, cc));
                    ok = ok && f.mul(ca, f.add(cb, cc)) == f.add(f.mul(ca, cb), f.mul(ca, cc));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("x generates the multiplicative group") {
    for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u}) {
        const auto& f = FieldSpec::get(q);
        CAPTURE(q);
        CHECK(f.order(static_cast<Code>(f.p())) == q - 1);
        CHECK(detail::poly_irreducible(f.modulus(), f.p()));
    }
}

TEST_CASE("modulus table and printing") {
    CHECK(FieldSpec::get(4).modulus_string() == "x^2+x+1");
    CHECK(FieldSpec::get(9).modulus_string() == "x^2+2x+2");
    CHECK(FieldSpec::get(25).modulus_string() == "x^2+4x+2");
    CHECK(FieldSpec::get(27).modulus_string() == "x^3+2x+1");
    CHECK(FieldSpec::get(3).modulus_string() == "-");
    // x^2+1 = (x+1)^2 over Z_2
    CHECK_FALSE(detail::poly_irreducible({1, 0, 1}, 2));
    // x^4+x^2+1 = (x^2+x+1)^2 over Z_2 has no roots but is reducible
    CHECK_FALSE(detail::poly_irreducible({1, 0, 1, 0, 1}, 2));
}

TEST_CASE("unsupported orders") {
    CHECK_FALSE(FieldSpec::supported(6));
    CHECK_FALSE(FieldSpec::supported(1));
    CHECK_FALSE(FieldSpec::supported(32));
    CHECK_THROWS_AS(FieldSpec::get(12), FieldError);
    CHECK_THROWS_AS(prime_power(10), FieldError);
    CHECK(prime_power(27) == std::pair{3u, 3u});
    CHECK(is_power_of(4, 2));
    CHECK_FALSE(is_power_of(6, 2));
    CHECK_FALSE(is_power_of(1, 2));
}
