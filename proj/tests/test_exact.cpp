#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klab/errors.hpp"
#include "klab/exact.hpp"
#include "klab/fiber.hpp"

#include <random>

using namespace klab;

namespace {

RatMatrix identity(std::size_t n)
{
    RatMatrix id(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

} // namespace

TEST_CASE("mat_inverse examples")
{
    const IntSymMatrix a2{{-2, 1}, {1, -2}};
    const RatMatrix inv = mat_inverse(a2);
    CHECK(inv == RatMatrix{{make_rat(-2, 3), make_rat(-1, 3)}, {make_rat(-1, 3), make_rat(-2, 3)}});
    CHECK(multiply(a2, inv) == identity(2));
    CHECK(mat_inverse(IntSymMatrix{{-2}}) == RatMatrix{{make_rat(-1, 2)}});
    CHECK(mat_inverse(IntSymMatrix{{-2, 0}, {0, -2}}) ==
          RatMatrix{{make_rat(-1, 2), Rat(0)}, {Rat(0), make_rat(-1, 2)}});
}

TEST_CASE("mat_inverse rejects singular input")
{
    CHECK_THROWS_AS(mat_inverse(IntSymMatrix{{1, 1}, {1, 1}}), SingularMatrix);
    CHECK_THROWS_AS(mat_inverse(IntSymMatrix{{0}}), SingularMatrix);
}

TEST_CASE("solve_symmetric examples")
{
    CHECK(solve_symmetric(IntSymMatrix{{-2}}, {make_rat(1, 2)}) == std::vector<Rat>{make_rat(-1, 4)});
    CHECK(solve_symmetric(IntSymMatrix{{-2, 1}, {1, -2}}, {make_rat(1, 3), make_rat(1, 3)}) ==
          std::vector<Rat>{make_rat(-1, 3), make_rat(-1, 3)});

    // I*_1 block: three tips, Theta_1 on the near end of a two-node chain.
    const IntSymMatrix d5{{-2, 0, 0, 1, 0}, {0, -2, 0, 0, 1}, {0, 0, -2, 0, 1}, {1, 0, 0, -2, 1}, {0, 1, 1, 1, -2}};
    const std::vector<Rat> v{0, 0, 0, make_rat(1, 4), make_rat(1, 4)};
    const auto x = solve_symmetric(d5, v);
    CHECK(x == std::vector<Rat>{make_rat(-1, 2), make_rat(-5, 8), make_rat(-5, 8), Rat(-1), make_rat(-5, 4)});
    CHECK(multiply(d5, x) == v);
}

TEST_CASE("solve_symmetric errors")
{
    CHECK_THROWS_AS(solve_symmetric(IntSymMatrix{{-2, 1}, {1, -2}}, {Rat(1)}), DimensionMismatch);
    CHECK_THROWS_AS(solve_symmetric(IntSymMatrix{{2, 2}, {2, 2}}, {Rat(1), Rat(1)}), SingularMatrix);
}

TEST_CASE("determinant matches the A_n closed form")
{
    for (int n = 1; n <= 13; ++n) {
        IntSymMatrix m(n);
        for (int i = 0; i < n; ++i) {
            m.set(i, i, -2);
            if (i + 1 < n) m.set(i, i + 1, 1);
        }
        CHECK(determinant(m) == BigInt((n % 2 ? -1 : 1) * (n + 1)));
    }
}

TEST_CASE("inverse and solve agree on every catalog matrix up to size 13")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (const FiberKind k : all_kinds(14)) {
        const IntSymMatrix m = intersection_matrix(k);
        if (m.size() == 0 || m.size() > 13) continue;
        const RatMatrix inv = mat_inverse(m);
        CHECK(multiply(m, inv) == identity(m.size()));
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rat> v(m.size());
            for (auto& r : v) r = make_rat(num(rng), den(rng));
            const auto x = solve_symmetric(m, v);
            std::vector<Rat> y(m.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j) y[i] += inv[i][j] * v[j];
            REQUIRE(x == y);
        }
    }
}

TEST_CASE("random nonsingular symmetric matrices invert exactly")
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-4, 4);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 60; ++trial) {
        const std::size_t n = 1 + trial % 13;
        IntSymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, e(rng));
        if (determinant(m) == 0) continue;
        ++tested;
        CHECK(multiply(m, mat_inverse(m)) == identity(n));
    }
    CHECK(tested >= 50);
}

TEST_CASE("Rat stays normalized")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<long long> p(-100000, 100000), q(1, 100000);
    for (int i = 0; i < 200; ++i) {
        const Rat a = make_rat(p(rng), q(rng));
        const Rat z = a + (-a);
        CHECK(boost::multiprecision::numerator(z) == 0);
        CHECK(boost::multiprecision::denominator(z) == 1);
        CHECK(boost::multiprecision::gcd(boost::multiprecision::numerator(a), boost::multiprecision::denominator(a)) == 1);
        CHECK(boost::multiprecision::denominator(a) > 0);
    }
    CHECK(to_string(make_rat(6, -4)) == "-3/2");
    CHECK(to_string(make_rat(4, 2)) == "2");
    CHECK(parse_rat("-3/2") == make_rat(-3, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rat("x"), DomainError);
}

TEST_CASE("PiLinear equality is componentwise")
{
    const PiLinear a(Rat(1), Rat(4));
    CHECK(a == PiLinear(Rat(1), Rat(4)));
    CHECK_FALSE(a == PiLinear(Rat(4), Rat(1)));
    CHECK((a - a).is_zero());
    CHECK_FALSE(PiLinear(Rat(0), Rat(1)).is_zero());
    CHECK_FALSE(PiLinear(Rat(1), Rat(0)).is_zero());
    CHECK(a * make_rat(1, 2) == PiLinear(make_rat(1, 2), Rat(2)));
}

TEST_CASE("pi_linear_eval")
{
    CHECK(pi_linear_eval(PiLinear(Rat(1), Rat(0)), 3.14159265358979) == 1.0);
    CHECK(pi_linear_eval(PiLinear(Rat(0), Rat(1)), 3.14159265358979) == doctest::Approx(3.14159265358979));
    CHECK(pi_linear_eval(PiLinear(Rat(1), Rat(4)), 3.14159265358979) == doctest::Approx(13.566370614359172));
}

TEST_CASE("pi enclosure and exact signs")
{
    for (int terms : {2, 4, 8, 16}) {
        auto [lo, hi] = pi_bounds(terms);
        CHECK(lo < hi);
        CHECK(to_double(lo) <= 3.141592653589793);
        CHECK(to_double(hi) >= 3.141592653589793);
    }
    auto [lo, hi] = pi_bounds(20);
    CHECK(to_double(hi - lo) < 1e-25);
    CHECK(sign_at_pi(PiLinear(Rat(-3), Rat(1))) == 1);
    CHECK(sign_at_pi(PiLinear(make_rat(22, 7), Rat(-1))) == 1);
    CHECK(sign_at_pi(PiLinear(make_rat(355, 113), Rat(-1))) == 1);
    CHECK(sign_at_pi(PiLinear(make_rat(-314159265, 100000000), Rat(1))) == 1);
    CHECK(sign_at_pi(PiPoly(std::vector<Rat>{make_rat(-98696, 10000), 0, 1})) == 1);
    CHECK(sign_at_pi(PiPoly()) == 0);
}

TEST_CASE("PiRatio equality clears denominators")
{
    const PiRatio a{PiPoly(PiLinear(Rat(2), Rat(2))), PiPoly(PiLinear(Rat(4), Rat(4)))};
    const PiRatio half{PiPoly(make_rat(1, 2))};
    CHECK(a == half);
    CHECK_FALSE(a == PiRatio{PiPoly(Rat(1))});
    CHECK(less_at_pi(half, PiRatio{PiPoly(Rat(1))}));
}
