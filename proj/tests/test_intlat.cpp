#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "invcalc/intlat.hpp"

using namespace invcalc::intlat;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            a(i, j) = dist(rng);
    return a;
}

bool unimodular(const IntMatrix& m) {
    Int d = m.determinant();
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("snf of small fixed matrices") {
    auto id = snf(IntMatrix::identity(2));
    CHECK(id.s == IntMatrix::identity(2));

    auto r = snf(IntMatrix{{1, 0}, {0, 0}});
    CHECK(r.s == (IntMatrix{{1, 0}, {0, 0}}));
    CHECK(r.rank() == 1);

    IntMatrix a{{2, 4}, {6, 8}};
    auto s = snf(a);
    CHECK(s.s == (IntMatrix{{2, 0}, {0, 4}}));
    CHECK(s.u * a * s.v == s.s);
}

TEST_CASE("snf contract on random matrices") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        IntMatrix a = random_matrix(rng, dim(rng), dim(rng), 50);
        auto r = snf(a);
        REQUIRE(r.u * a * r.v == r.s);
        CHECK(r.s.is_diagonal());
        CHECK(unimodular(r.u));
        CHECK(unimodular(r.v));
        auto d = r.diagonal();
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (i + 1 < d.size() && d[i] != 0)
                CHECK(d[i + 1] % d[i] == 0);
            if (d[i] == 0 && i + 1 < d.size())
                CHECK(d[i + 1] == 0);
        }
        if (a.rows() == a.cols()) {
            Int prod = 1;
            for (const auto& x : d)
                prod *= x;
            CHECK(abs(a.determinant()) == prod);
        }
    }
}

TEST_CASE("snf of a zero-size and zero matrix") {
    auto r = snf(IntMatrix(3, 2));
    CHECK(r.rank() == 0);
    CHECK(r.u * IntMatrix(3, 2) * r.v == r.s);
}

TEST_CASE("hnf is canonical") {
    Sublattice a(2, std::vector<IntVector>{to_int_vector({1, 1}), to_int_vector({0, 2})});
    Sublattice b(2, std::vector<IntVector>{to_int_vector({1, -1}), to_int_vector({0, 2})});
    CHECK(a == b);
    CHECK(lattice_equal(a, b));
    CHECK(a.basis() == (IntMatrix{{1, 1}, {0, 2}}));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix g = random_matrix(rng, 4, 3, 9);
        // Same lattice under a unimodular change of generators.
        IntMatrix u = IntMatrix::identity(4);
        u.add_row_multiple(0, 2, 3);
        u.add_row_multiple(3, 1, -2);
        u.swap_rows(1, 2);
        CHECK(Sublattice(3, g) == Sublattice(3, u * g));
    }
}

TEST_CASE("solve_congruences examples") {
    CongruenceSystem one;
    one.m = 1;
    one.add(to_int_vector({1}), 4);
    CHECK(solve_congruences(one) == Sublattice::diagonal(to_int_vector({4})));

    CongruenceSystem two;
    two.m = 2;
    two.add(to_int_vector({1, 1}), 2);
    CHECK(solve_congruences(two) ==
          Sublattice(2, std::vector<IntVector>{to_int_vector({1, 1}), to_int_vector({0, 2})}));

    CongruenceSystem none;
    none.m = 2;
    CHECK(solve_congruences(none) == Sublattice::full(2));
}

TEST_CASE("exact equality constraints") {
    CongruenceSystem sys;
    sys.m = 2;
    sys.add(to_int_vector({1, -1}), 0);
    auto l = solve_congruences(sys);
    CHECK(l.rank() == 1);
    CHECK(l.contains(to_int_vector({5, 5})));
    CHECK_FALSE(l.contains(to_int_vector({1, 0})));
}

TEST_CASE("solve_congruences exhaustively for m <= 3") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coef(-6, 6), mod(1, 8), count(0, 3);
    for (std::size_t m = 1; m <= 3; ++m)
        for (int trial = 0; trial < 25; ++trial) {
            CongruenceSystem sys;
            sys.m = m;
            for (long k = count(rng); k > 0; --k) {
                IntVector row(m);
                for (auto& x : row)
                    x = coef(rng);
                sys.add(row, mod(rng));
            }
            auto sat = [&](const IntVector& d) {
                for (const auto& c : sys.constraints) {
                    Int s = 0;
                    for (std::size_t i = 0; i < m; ++i)
                        s += c.row[i] * d[i];
                    if (s % c.modulus != 0)
                        return false;
                }
                return true;
            };
            auto l = solve_congruences(sys);
            CHECK(l.is_full_rank());
            for (const auto& g : l.basis().row_list())
                CHECK(sat(g));
            IntVector d(m);
            std::vector<long> v(m, -8);
            for (;;) {
                for (std::size_t i = 0; i < m; ++i)
                    d[i] = v[i];
                CHECK(sat(d) == l.contains(d));
                std::size_t i = 0;
                while (i < m && v[i] == 8)
                    v[i++] = -8;
                if (i == m)
                    break;
                ++v[i];
            }
        }
}

TEST_CASE("lattice_quotient examples and errors") {
    CHECK(lattice_quotient(Sublattice::full(1), Sublattice::diagonal(to_int_vector({2}))) ==
          FiniteAbelianGroup(to_int_vector({2})));
    CHECK(lattice_quotient(Sublattice::full(2), Sublattice::diagonal(to_int_vector({2, 2}))) ==
          FiniteAbelianGroup(to_int_vector({2, 2})));
    Sublattice small(2, std::vector<IntVector>{to_int_vector({2, 2}), to_int_vector({4, 0})});
    CHECK(lattice_quotient(Sublattice::full(2), small) == FiniteAbelianGroup(to_int_vector({2, 4})));
    CHECK(lattice_quotient(small, small).is_trivial());

    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const LatticeError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of([] {
              lattice_quotient(Sublattice::diagonal(to_int_vector({2})), Sublattice::full(1));
          }) == static_cast<int>(LatticeError::Kind::NotASubgroup));
    CHECK(kind_of([] {
              lattice_quotient(Sublattice::full(2),
                               Sublattice(2, std::vector<IntVector>{to_int_vector({1, 0})}));
          }) == static_cast<int>(LatticeError::Kind::InfiniteQuotient));
    CHECK(kind_of([] { lattice_member(Sublattice::full(2), to_int_vector({1})); }) ==
          static_cast<int>(LatticeError::Kind::DimensionMismatch));
}

TEST_CASE("quotient order equals the index ratio") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix g = random_matrix(rng, 3, 3, 6);
        if (g.determinant() == 0)
            continue;
        Sublattice big(3, g);
        Sublattice small(3, IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 2}} * big.basis());
        auto q = lattice_quotient(big, small);
        CHECK(q.order() * big.index() == small.index());
        CHECK(q.order() == 12);
    }
}

TEST_CASE("member, sum, equal") {
    auto two = Sublattice::diagonal(to_int_vector({2}));
    auto three = Sublattice::diagonal(to_int_vector({3}));
    CHECK(lattice_member(two, to_int_vector({4})));
    CHECK_FALSE(lattice_member(two, to_int_vector({3})));
    CHECK(lattice_sum(two, three) == Sublattice::full(1));
    CHECK(lattice_equal(Sublattice(2, std::vector<IntVector>{to_int_vector({1, 1}), to_int_vector({0, 2})}),
                        Sublattice(2, std::vector<IntVector>{to_int_vector({1, -1}), to_int_vector({0, 2})})));
}

TEST_CASE("finite abelian group display") {
    CHECK(FiniteAbelianGroup().to_string() == "0");
    CHECK(FiniteAbelianGroup(to_int_vector({2})).to_string() == "Z/2");
    CHECK(FiniteAbelianGroup(to_int_vector({2, 2, 2})).to_string() == "(Z/2)^3");
    CHECK(FiniteAbelianGroup(to_int_vector({2, 4})).to_string() == "Z/2 x Z/4");
    CHECK(FiniteAbelianGroup(to_int_vector({2, 2})).is_elementary_2_group());
    CHECK_THROWS(FiniteAbelianGroup(to_int_vector({2, 3})));
}
