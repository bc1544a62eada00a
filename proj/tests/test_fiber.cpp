#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klab/errors.hpp"
#include "klab/fiber.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace klab;

namespace {

std::vector<FiberKind> elliptic_kinds()
{
    return {FiberKind::II(), FiberKind::IIStar(), FiberKind::III(),
            FiberKind::IIIStar(), FiberKind::IV(), FiberKind::IVStar()};
}

int smallest_valid_order(FiberKind k)
{
    for (int d = 1;; ++d)
        if (validate_order({k, d}).ok) return d;
}

cd random_disk_point(std::mt19937& rng, double radius)
{
    std::uniform_real_distribution<double> r(0.0, radius), th(0.0, 2 * std::numbers::pi);
    return std::polar(r(rng), th(rng));
}

} // namespace

TEST_CASE("classify_monodromy examples")
{
    CHECK(classify_monodromy({1, 0, 0, 1}) == FiberKind::regular());
    CHECK(classify_monodromy({1, 1, -1, 0}) == FiberKind::II());
    CHECK(classify_monodromy({-1, -3, 0, -1}) == FiberKind::IStar(3));
    CHECK(classify_monodromy({0, 1, -1, 0}) == FiberKind::III());
    CHECK(classify_monodromy({-1, 0, 0, -1}) == FiberKind::IStar(0));
    CHECK(classify_monodromy({1, 5, 0, 1}) == FiberKind::I(5));
}

TEST_CASE("classify_monodromy errors")
{
    CHECK_THROWS_AS(classify_monodromy({2, 0, 0, 1}), NotSL2Z);
    CHECK_THROWS_AS(classify_monodromy({2, 1, 1, 1}), NotKodaira);
}

TEST_CASE("classification round trip over table representatives")
{
    for (const FiberKind k : all_kinds(6)) CHECK(classify_monodromy(monodromy_representative(k)) == k);
}

TEST_CASE("classification is a conjugacy invariant")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(-5, 5);
    std::vector<SL2Z> conj;
    while (conj.size() < 50) {
        SL2Z q{e(rng), e(rng), e(rng), e(rng)};
        if (q.det() == 1) conj.push_back(q);
    }
    for (const FiberKind k : all_kinds(6)) {
        const SL2Z a = monodromy_representative(k);
        for (const SL2Z& q : conj) CHECK(classify_monodromy(q * a * inverse(q)) == k);
    }
}

TEST_CASE("fiber_constants examples")
{
    const auto ii = fiber_constants(FiberKind::II());
    CHECK(ii.delta == make_rat(1, 6));
    CHECK(ii.mu == 3);
    CHECK(ii.h == 6);
    const auto ib = fiber_constants(FiberKind::I(4));
    CHECK(ib.delta == 0);
    CHECK_FALSE(ib.mu.has_value());
    const auto iiis = fiber_constants(FiberKind::IIIStar());
    CHECK(iiis.delta == make_rat(3, 4));
    CHECK(iiis.mu == 2);
    CHECK(iiis.h == 4);
}

TEST_CASE("delta_p table")
{
    CHECK(fiber_constants(FiberKind::regular()).delta == 0);
    CHECK(fiber_constants(FiberKind::IStar(2)).delta == make_rat(1, 2));
    CHECK(fiber_constants(FiberKind::IStar(0)).delta == make_rat(1, 2));
    CHECK(fiber_constants(FiberKind::IIStar()).delta == make_rat(5, 6));
    CHECK(fiber_constants(FiberKind::III()).delta == make_rat(1, 4));
    CHECK(fiber_constants(FiberKind::IV()).delta == make_rat(1, 3));
    CHECK(fiber_constants(FiberKind::IVStar()).delta == make_rat(2, 3));
}

TEST_CASE("Euler numbers count components")
{
    // e = (#components) for I_b and (#components + 1) for the additive types.
    for (const FiberKind k : all_kinds(8)) {
        const auto c = fiber_constants(k);
        const int comps = int(c.multiplicities.size());
        if (k.tag == FiberTag::Regular)
            CHECK(c.euler == 0);
        else if (k.tag == FiberTag::I)
            CHECK(c.euler == comps);
        else
            CHECK(c.euler == comps + 1);
    }
}

TEST_CASE("intersection matrices are negative-definite Dynkin blocks")
{
    for (const FiberKind k : all_kinds(9)) {
        const IntSymMatrix m = intersection_matrix(k);
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(m(i, i) == -2);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(m(i, j) == m(j, i));
                if (i != j) CHECK((m(i, j) == 0 || m(i, j) == 1));
            }
        }
        // leading minors alternate in sign
        for (std::size_t r = 1; r <= n; ++r) {
            IntSymMatrix lead(r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i; j < r; ++j) lead.set(i, j, m(i, j));
            CHECK(determinant(lead) * ((r % 2) ? -1 : 1) > 0);
        }
    }
}

TEST_CASE("intersection matrix determinants match the root lattices")
{
    auto det = [](FiberKind k) { return determinant(intersection_matrix(k)); };
    CHECK(det(FiberKind::IV()) == 3);
    CHECK(det(FiberKind::III()) == -2);
    CHECK(det(FiberKind::IStar(0)) == 4);
    CHECK(det(FiberKind::IVStar()) == 3);
    CHECK(det(FiberKind::IIIStar()) == -2);
    CHECK(det(FiberKind::IIStar()) == 1);
    for (int b = 1; b <= 8; ++b) {
        CHECK(det(FiberKind::IStar(b)) == ((b % 2) ? -4 : 4));
        CHECK(intersection_matrix(FiberKind::IStar(b)).size() == std::size_t(b + 4));
    }
    for (int b = 2; b <= 8; ++b) CHECK(det(FiberKind::I(b)) == (b % 2 ? b : -b));
    CHECK(intersection_matrix(FiberKind::I(1)).size() == 0);
    CHECK(intersection_matrix(FiberKind::II()).size() == 0);
}

TEST_CASE("intersection_matrix examples")
{
    const IntSymMatrix iv = intersection_matrix(FiberKind::IV());
    CHECK(iv(0, 0) == -2);
    CHECK(iv(0, 1) == 1);
    const IntSymMatrix d4 = intersection_matrix(FiberKind::IStar(0));
    const long long want[4][4] = {{-2, 0, 0, 1}, {0, -2, 0, 1}, {0, 0, -2, 1}, {1, 1, 1, -2}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(d4(i, j) == want[i][j]);
    const IntSymMatrix a3 = intersection_matrix(FiberKind::I(4));
    CHECK(a3.size() == 3);
    CHECK(a3(0, 2) == 0);
    CHECK(a3(1, 2) == 1);
}

TEST_CASE("eta_intersection_vector examples")
{
    const Rat z(0);
    CHECK(eta_intersection_vector(FiberKind::IIIStar()) == std::vector<Rat>{z, z, make_rat(1, 4), z, z, z, z});
    CHECK(eta_intersection_vector(FiberKind::IStar(0)) == std::vector<Rat>{z, z, z, make_rat(1, 2)});
    CHECK(eta_intersection_vector(FiberKind::I(3)) == std::vector<Rat>{make_rat(1, 3), make_rat(1, 3)});
    CHECK(eta_intersection_vector(FiberKind::IStar(3)) ==
          std::vector<Rat>{z, z, z, make_rat(1, 12), make_rat(1, 6), make_rat(1, 6), make_rat(1, 12)});
    for (const FiberKind k : all_kinds(8))
        CHECK(eta_intersection_vector(k).size() == intersection_matrix(k).size());
}

TEST_CASE("extension_exponents")
{
    using V = std::vector<std::pair<std::string, Rat>>;
    CHECK(extension_exponents(FiberKind::IIStar()) ==
          V{{"Theta_1", make_rat(1, 6)}, {"Theta_2", make_rat(1, 3)}, {"Theta_3", make_rat(1, 2)},
            {"Theta_4", make_rat(2, 3)}, {"Theta_5", make_rat(2, 3)}, {"Theta_6", make_rat(1, 3)},
            {"Theta_7", make_rat(2, 3)}, {"Theta_8", make_rat(1, 2)}});
    CHECK(extension_exponents(FiberKind::IV()) ==
          V{{"Theta_1", make_rat(1, 3)}, {"Theta_2", make_rat(1, 3)}, {"Theta_3", make_rat(1, 3)}});
    const auto d4 = extension_exponents(FiberKind::IStar(0));
    CHECK(d4.size() == 4);
    for (const auto& [label, a] : d4) CHECK(a == make_rat(1, 2));
    for (const auto& [label, a] : extension_exponents(FiberKind::IVStar())) CHECK(a == make_rat(1, 3));
    const auto e7 = extension_exponents(FiberKind::IIIStar());
    CHECK(e7.size() == 7);
    CHECK(e7[0] == std::pair<std::string, Rat>{"Theta_01", make_rat(1, 4)});
    CHECK(e7[3] == std::pair<std::string, Rat>{"Theta_11", make_rat(1, 4)});
    CHECK(e7[6] == std::pair<std::string, Rat>{"Theta_2", make_rat(1, 2)});
    CHECK(extension_exponents(FiberKind::II()).back().second == make_rat(1, 2));
    CHECK_THROWS_AS(extension_exponents(FiberKind::regular()), NoExponentData);
    CHECK_THROWS_AS(extension_exponents(FiberKind::I(3)), NoExponentData);
    CHECK_THROWS_AS(extension_exponents(FiberKind::IStar(2)), NoExponentData);
}

TEST_CASE("local_period examples")
{
    const cd eta = std::polar(1.0, 2 * std::numbers::pi / 3);
    CHECK(std::abs(local_period({FiberKind::II(), 1}, 0.0) - eta) < 1e-15);
    CHECK(std::abs(local_period({FiberKind::III(), 1}, 0.0) - cd(0, 1)) < 1e-15);
    CHECK(std::abs(local_period({FiberKind::regular(), 2, {0, 2}}, 0.1) - cd(0.01, 2)) < 1e-15);
    CHECK(std::abs(local_period({FiberKind::I(3), 3}, cd(0.5, 1)) - cd(1.5, 3)) < 1e-15);
    CHECK_THROWS_AS(local_period({FiberKind::I(3), 3}, cd(0.5, -1)), OutOfDomain);
    CHECK_THROWS_AS(local_period({FiberKind::II(), 1}, 1.2), OutOfDomain);
}

TEST_CASE("local periods stay in H+")
{
    std::mt19937 rng(23);
    for (const FiberKind k : elliptic_kinds()) {
        const LocalModel m{k, smallest_valid_order(k)};
        for (int i = 0; i < 50; ++i) CHECK(local_period(m, random_disk_point(rng, 0.3)).imag() > 0);
    }
}

TEST_CASE("local periods are equivariant")
{
    std::mt19937 rng(29);
    for (const FiberKind k : elliptic_kinds()) {
        for (int step = 0; step < 3; ++step) {
            const int congr = fiber_constants(k).congruence.modulus;
            const LocalModel m{k, smallest_valid_order(k) + step * congr};
            const SL2Z rho = monodromy_representative(k);
            double worst = 0;
            for (int i = 0; i < 20; ++i) {
                const cd tau = random_disk_point(rng, 0.3);
                const cd lhs = local_period(m, local_rotation(k) * tau);
                const cd rhs = mobius(rho, local_period(m, tau));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            INFO(to_string(k), " d_p=", m.d_p);
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("local_action examples")
{
    const LocalModel d4{FiberKind::IStar(0), 1};
    const FiberPoint p{cd(0.1, 0.2), cd(0.3, -0.1)};
    const FiberPoint q = local_action(d4, 1, p);
    CHECK(std::abs(q.tau + p.tau) < 1e-16);
    CHECK(q.z == -p.z);
    const FiberPoint r = local_action(d4, 2, p);
    CHECK(std::abs(r.tau - p.tau) < 1e-16);
    CHECK(std::abs(r.z - p.z) < 1e-16);

    const LocalModel ii{FiberKind::II(), 1};
    const FiberPoint s = local_action(ii, 1, {0.1, 0.2});
    CHECK(std::abs(s.tau - std::polar(0.1, std::numbers::pi / 3)) < 1e-15);
    CHECK(std::abs(s.z - (-0.2 / local_period(ii, 0.1))) < 1e-15);
    CHECK_THROWS_AS(local_action({FiberKind::I(2), 2}, 1, p), OutOfDomain);
}

TEST_CASE("g_p^h_p is the identity modulo the lattice")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> zc(-1.0, 1.0);
    for (const FiberKind k : [] {
             auto v = elliptic_kinds();
             v.push_back(FiberKind::IStar(0));
             return v;
         }()) {
        const LocalModel m{k, smallest_valid_order(k)};
        const int h = *fiber_constants(k).h;
        for (int i = 0; i < 20; ++i) {
            const FiberPoint p{random_disk_point(rng, 0.3), cd(zc(rng), zc(rng))};
            const FiberPoint q = local_action(m, h, p);
            CHECK(std::abs(q.tau - p.tau) < 1e-12);
            CHECK(lattice_residual(q.z - p.z, local_period(m, p.tau)) < 1e-10);
        }
    }
}

TEST_CASE("validate_order examples")
{
    CHECK(validate_order({FiberKind::II(), 4}).ok);
    const auto bad = validate_order({FiberKind::II(), 2});
    CHECK_FALSE(bad.ok);
    CHECK(bad.diagnostic == "II requires d_p ≡ 1 mod 3");
    CHECK(validate_order({FiberKind::IIIStar(), 3}).ok);
    CHECK_FALSE(validate_order({FiberKind::III(), 2}).ok);
    CHECK(validate_order({FiberKind::IV(), 2}).ok);
    CHECK(validate_order({FiberKind::IVStar(), 4}).ok);
    CHECK(validate_order({FiberKind::IIStar(), 5}).ok);
    CHECK(validate_order({FiberKind::I(3), 3}).ok);
    CHECK_FALSE(validate_order({FiberKind::I(3), 2}).ok);
    CHECK(validate_order({FiberKind::regular(), 7}).ok);
}

TEST_CASE("fiber kind strings round trip")
{
    for (const FiberKind k : all_kinds(5)) CHECK(parse_fiber_kind(to_string(k)) == k);
    CHECK(to_string(FiberKind::IStar(0)) == "I*_0");
    CHECK(to_string(FiberKind::I(3)) == "I_3");
    CHECK_THROWS_AS(parse_fiber_kind("V"), DomainError);
    CHECK_THROWS_AS(parse_fiber_kind("I_0"), DomainError);
}
