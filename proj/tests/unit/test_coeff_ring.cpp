#include <doctest.h>

#include "dtl/coeff_ring.hpp"
#include "generators.hpp"

using namespace dtl;

TEST_CASE("ring arithmetic examples") {
    Ring z = Ring::integers(0);
    CHECK(z.equal(z.add(Integer(2), Integer(3)), Integer(5)));

    Ring f5 = Ring::prime_field(5, 0);
    CHECK(f5.equal(f5.multiply(f5.from_integer(3), f5.from_integer(4)), f5.from_integer(2)));

    Ring zd = Ring::polynomial();
    Scalar d = Polynomial::delta();
    Scalar product = zd.multiply(zd.add(d, zd.one()), zd.subtract(d, zd.one()));
    CHECK(zd.format(product) == "delta^2 - 1");
}

TEST_CASE("specialize examples") {
    Polynomial p = Polynomial::parse("delta^2 - 1");
    CHECK(std::get<Integer>(specialize(p, Ring::integers(2))) == 3);
    CHECK(std::get<Integer>(specialize(Polynomial::delta(), Ring::integers(0))) == 0);
    Ring f3 = Ring::prime_field(3, 1);
    CHECK(std::get<Residue>(specialize(Polynomial::parse("delta + 3"), f3)).value == 1);
}

TEST_CASE("specialization is a ring homomorphism") {
    const std::vector<Ring> targets = {Ring::integers(2), Ring::integers(-1), Ring::rationals(Rational(1, 2)),
                                       Ring::prime_field(5, 3), Ring::prime_field(2, 1)};
    for (int trial = 0; trial < 300; ++trial) {
        Polynomial a = testing::random_polynomial(), b = testing::random_polynomial();
        for (const auto& t : targets) {
            CHECK(t.equal(specialize(a * b, t), t.multiply(specialize(a, t), specialize(b, t))));
            CHECK(t.equal(specialize(a + b, t), t.add(specialize(a, t), specialize(b, t))));
            CHECK(t.equal(specialize(-a, t), t.negate(specialize(a, t))));
        }
    }
}

TEST_CASE("polynomial canonical form is unique") {
    for (int trial = 0; trial < 300; ++trial) {
        Polynomial a = testing::random_polynomial(), b = testing::random_polynomial();
        // Commuted sums must produce the identical term list.
        CHECK((a + b).terms() == (b + a).terms());
        CHECK(((a - a).terms().empty()));
        CHECK(Polynomial::parse(a.to_string()) == a);
        bool same_terms = a.terms() == b.terms();
        CHECK((a == b) == same_terms);
    }
    CHECK(Polynomial::parse("delta + 2 + delta - 2").to_string() == "2*delta");
    CHECK(Polynomial::parse("0").is_zero());
    CHECK(Polynomial::parse("-delta^3 + delta").to_string() == "-delta^3 + delta");
}

TEST_CASE("mixed ring operands are rejected") {
    Ring z = Ring::integers(1);
    Ring f2 = Ring::prime_field(2, 1);
    Ring f3 = Ring::prime_field(3, 1);
    CHECK_THROWS_AS(z.add(Integer(1), f2.one()), RingMismatch);
    CHECK_THROWS_AS(f2.add(f2.one(), f3.one()), RingMismatch);
}

TEST_CASE("ring descriptors") {
    CHECK(Ring::parse("Z", "2").descriptor() == "Z");
    CHECK(Ring::parse("Fp:7", "9").delta_descriptor() == "2");
    CHECK(Ring::parse("Z[delta]", "generic").kind() == RingKind::IntegerPolynomial);
    CHECK_THROWS(Ring::parse("Fp:4", "0"));
    CHECK_THROWS(Ring::parse("Z[delta]", "1"));
    CHECK_THROWS(Ring::parse("Z", "generic"));
    CHECK_THROWS(Ring::parse("R", "0"));
}

TEST_CASE("units") {
    Ring z = Ring::integers(0);
    CHECK(z.is_unit(Integer(-1)));
    CHECK_FALSE(z.is_unit(Integer(2)));
    Ring q = Ring::rationals(0);
    CHECK(q.is_unit(Rational(2)));
    CHECK_FALSE(q.is_unit(Rational(0)));
    Ring f7 = Ring::prime_field(7, 0);
    CHECK(f7.is_unit(f7.from_integer(3)));
    CHECK_FALSE(f7.is_unit(f7.from_integer(14)));
}
