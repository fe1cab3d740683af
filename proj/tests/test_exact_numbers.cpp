#include <random>

#include "doctest.h"
#include "padicosc/padic.hpp"

using namespace padicosc;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-2000, 2000);
    std::uniform_int_distribution<long> den(1, 2000);
    return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(q("6/4") == Rational(3, 2));
    CHECK(q("-0/7").to_string() == "0");
    CHECK(q("0").denominator() == 1);
    CHECK(q("+5").to_string() == "5");
    CHECK(q("-10/4").to_string() == "-5/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("3/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("p-adic valuation and norm") {
    CHECK(padic_valuation(Rational(12), 2) == 2);
    CHECK(padic_norm(Rational(12), 2) == Rational(1, 4));
    CHECK_FALSE(padic_valuation(Rational(0), 5).has_value());
    CHECK(padic_norm(Rational(0), 5) == Rational(0));
    CHECK(padic_valuation(q("9/10"), 3) == 2);
    CHECK(padic_norm(q("1/3"), 3) == Rational(3));
    CHECK(padic_norm(Rational(7), 3) == Rational(1));
    // strong triangle inequality on 1/3 + 2/3
    CHECK(padic_norm(q("1/3") + q("2/3"), 3) <= std::max(padic_norm(q("1/3"), 3), padic_norm(q("2/3"), 3)));
}

TEST_CASE("fractional part") {
    CHECK(fractional_part(q("1/3") + Rational(5), 3) == q("1/3"));
    CHECK(fractional_part(q("7/4"), 2) == q("3/4"));
    CHECK(padic_norm(q("7/4") - q("3/4"), 2) <= Rational(1));
    CHECK(fractional_part(q("5/7"), 3) == Rational(0));
    // negative input lands in [0,1)
    CHECK(fractional_part(q("-1/3"), 3) == q("2/3"));
    CHECK(fractional_part(q("-1/20"), 2) == q("3/4"));
    CHECK(padic_norm(q("-1/20") - q("3/4"), 2) <= Rational(1));
}

TEST_CASE("characters and omega") {
    CHECK(chi(q("1/3"), 3).angle() == q("1/3"));
    CHECK(chi(Rational(2), 3).is_one());
    CHECK((chi(q("1/2"), 2) * chi(q("1/2"), 2)).is_one());
    CHECK(chi(q("1/2") + q("1/2"), 2).is_one());
    CHECK(omega(padic_norm(Rational(5), 3)) == 1);
    CHECK(omega(padic_norm(q("1/3"), 3)) == 0);
    CHECK(omega(Rational(0)) == 1);
    auto v = chi(q("1/4"), 2).value();
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(1.0));
}

TEST_CASE("canonical expansion") {
    auto e = canonical_expansion(Rational(-1), 3, 4);
    CHECK(e.valuation == 0);
    CHECK(e.digits == std::vector<unsigned long>{2, 2, 2, 2});
    CHECK(padic_norm(e.value() - Rational(-1), 3) <= Rational(1, 81));

    e = canonical_expansion(q("1/2"), 3, 3);
    CHECK(e.digits == std::vector<unsigned long>{2, 1, 1});
    // 2 * (2 + 3 + 9) = 28 = 1 mod 27
    CHECK((2 * (2 + 3 + 9)) % 27 == 1);

    e = canonical_expansion(Rational(9), 3, 2);
    CHECK(e.valuation == 2);
    CHECK(e.digits == std::vector<unsigned long>{1, 0});

    auto z = canonical_expansion(Rational(0), 5, 3);
    CHECK(z.exact_zero);
    CHECK(z.value() == Rational(0));
}

TEST_CASE("Hensel square roots") {
    auto r = padic_sqrt(Rational(4), 5, 3);
    REQUIRE(r);
    CHECK(r->digits == std::vector<unsigned long>{2, 0, 0});
    CHECK(r->value() * r->value() == Rational(4));

    // 2 is a non-residue mod 5 and mod 3
    CHECK_FALSE(padic_sqrt(Rational(2), 5, 3));
    CHECK_FALSE(padic_sqrt(Rational(2), 3, 2));

    // -1 is a residue mod 5: 57^2 = -1 mod 125
    r = padic_sqrt(Rational(-1), 5, 3);
    REQUIRE(r);
    CHECK(r->digits == std::vector<unsigned long>{2, 1, 2});

    // odd valuation has no root
    CHECK_FALSE(padic_sqrt(Rational(3), 3, 4));
    // p = 2 needs unit = 1 mod 8
    CHECK(padic_sqrt(Rational(17), 2, 10));
    CHECK_FALSE(padic_sqrt(Rational(5), 2, 10));
    CHECK_FALSE(padic_sqrt(Rational(3), 2, 10));
    auto two = padic_sqrt(Rational(-7, 4), 2, 12);
    REQUIRE(two);
    CHECK(two->valuation == -1);
    CHECK(two->digits[0] == 1);
    CHECK(padic_norm(two->value() * two->value() - Rational(-7, 4), 2) <= pow(Rational(2), -(-2 + 12)));
    CHECK_THROWS(padic_sqrt(Rational(0), 3));
}

TEST_CASE("property: ultrametric, multiplicative, character kernel and additivity") {
    std::mt19937_64 rng(20240601);
    auto primes = primes_up_to(50);
    for (int iter = 0; iter < 400; ++iter) {
        Rational x = random_rational(rng), y = random_rational(rng);
        for (Prime p : primes) {
            Rational nx = padic_norm(x, p), ny = padic_norm(y, p), nsum = padic_norm(x + y, p);
            CHECK(nsum <= std::max(nx, ny));
            if (nx != ny) CHECK(nsum == std::max(nx, ny));
            CHECK(padic_norm(x * y, p) == nx * ny);
            CHECK(chi(x, p).is_one() == (nx <= Rational(1)));
            CHECK(chi(x + y, p).angle() == real_fractional_part(chi(x, p).angle() + chi(y, p).angle()));
            Rational f = fractional_part(x, p);
            CHECK(f >= Rational(0));
            CHECK(f < Rational(1));
            CHECK(padic_norm(x - f, p) <= Rational(1));
        }
    }
}

TEST_CASE("property: product formula") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        Rational x = random_rational(rng);
        if (x.is_zero()) continue;
        Rational prod = abs(x);
        for (const auto& f : prime_factors(x.numerator() * x.denominator()))
            prod *= padic_norm(x, f.get_ui());
        CHECK(prod == Rational(1));
    }
}

TEST_CASE("property: expansion round trip and sqrt squares back") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        Rational x = random_rational(rng);
        if (x.is_zero()) continue;
        for (Prime p : {2ul, 3ul, 5ul, 7ul, 13ul}) {
            int n = 1 + static_cast<int>(iter % 20);
            auto e = canonical_expansion(x, p, n);
            CHECK(e.digits.size() == static_cast<std::size_t>(n));
            CHECK(e.digits[0] != 0);
            long v = *padic_valuation(x, p);
            CHECK(padic_norm(e.value() - x, p) <= pow(Rational(static_cast<long>(p)), -(v + n)));

            Rational sq = x * x;
            auto r = padic_sqrt(sq, p, n);
            REQUIRE(r);
            CHECK(padic_norm(r->value() * r->value() - sq, p) <= pow(Rational(static_cast<long>(p)), -(2 * v + n)));
            if (p != 2) CHECK(r->digits[0] <= (p - 1) / 2);
        }
    }
}
