#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "invcalc/rootdata.hpp"

using namespace invcalc::rootdata;
using invcalc::intlat::IntMatrix;

namespace {

const SimpleFactor B1{DynkinType::B, 1}, B2{DynkinType::B, 2}, B3{DynkinType::B, 3};
const SimpleFactor C2{DynkinType::C, 2}, C3{DynkinType::C, 3};
const SimpleFactor D4{DynkinType::D, 4}, D5{DynkinType::D, 5};

std::vector<SimpleFactor> small_factors() {
    std::vector<SimpleFactor> out;
    for (int n = 1; n <= 4; ++n) {
        out.push_back({DynkinType::B, n});
        out.push_back({DynkinType::C, n});
    }
    for (int n = 3; n <= 5; ++n)
        out.push_back({DynkinType::D, n});
    return out;
}

// All weights with fundamental coefficients in [0, h].
std::vector<Weight> dominant_box(const SimpleFactor& f, int h) {
    std::vector<Weight> out;
    Weight a(f.rank, 0);
    for (;;) {
        out.push_back(from_fundamental(f, a));
        std::size_t k = 0;
        while (k < a.size() && a[k] == h)
            a[k++] = 0;
        if (k == a.size())
            return out;
        ++a[k];
    }
}

}  // namespace

TEST_CASE("factor validation") {
    CHECK_NOTHROW(B1.validate());
    CHECK_THROWS(SimpleFactor{DynkinType::D, 2}.validate());
    CHECK_THROWS(SimpleFactor{DynkinType::C, 0}.validate());
}

TEST_CASE("cartan matrices") {
    CHECK(cartan_matrix(B1) == IntMatrix{{2}});
    CHECK(cartan_matrix(B2) == (IntMatrix{{2, -1}, {-2, 2}}));
    CHECK(cartan_matrix(C2) == cartan_matrix(B2).transpose());
    CHECK(cartan_matrix(D4) == (IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}));
}

TEST_CASE("killing forms") {
    QForm b1;
    b1.add(0, 0, 1);
    CHECK(killing_form(B1) == b1);

    QForm c2;
    c2.add(0, 0, 1);
    c2.add(1, 1, 1);
    CHECK(killing_form(C2) == c2);

    QForm d4;
    for (std::size_t j = 0; j < 4; ++j)
        d4.add(j, j, 1);
    d4.add(0, 1, -1);
    d4.add(1, 2, -1);
    d4.add(1, 3, -1);
    CHECK(killing_form(D4) == d4);

    // Offsets shift the support.
    CHECK(killing_form(B1, 3).coefficient(3, 3) == 1);
    CHECK(killing_form(B1, 3).terms().size() == 1);
}

TEST_CASE("center groups and images") {
    CHECK(center_group({DynkinType::B, 5}) == std::vector<int>{2});
    CHECK(center_group(D5) == std::vector<int>{4});
    CHECK(center_group({DynkinType::D, 6}) == std::vector<int>{2, 2});

    CHECK(weight_center_image(B3, Weight{0, 0, 1}) == std::vector<int>{1});
    CHECK(weight_center_image(C2, Weight{1, 1}) == std::vector<int>{0});
    CHECK(weight_center_image(D5, fundamental_weight(D5, 5)) == std::vector<int>{3});
    CHECK(weight_center_image(D4, fundamental_weight(D4, 3)) == std::vector<int>{1, 0});
}

TEST_CASE("center image is additive and kills roots") {
    for (const auto& f : small_factors()) {
        auto moduli = center_group(f);
        for (const auto& root : simple_roots(f)) {
            auto img = weight_center_image(f, root);
            CHECK(std::all_of(img.begin(), img.end(), [](int x) { return x == 0; }));
        }
        auto box = dominant_box(f, 1);
        for (const auto& x : box)
            for (const auto& y : box) {
                Weight s(x.size());
                for (std::size_t k = 0; k < s.size(); ++k)
                    s[k] = x[k] + y[k];
                auto ix = weight_center_image(f, x), iy = weight_center_image(f, y), is = weight_center_image(f, s);
                for (std::size_t c = 0; c < moduli.size(); ++c)
                    CHECK(is[c] == (ix[c] + iy[c]) % moduli[c]);
            }
        if (f.type == DynkinType::B)
            for (int j = 1; j < f.rank; ++j)
                CHECK(weight_center_image(f, fundamental_weight(f, j)) == std::vector<int>{0});
    }
}

TEST_CASE("orbit sizes") {
    CHECK(weyl_orbit(B1, Weight{1}) == std::vector<Weight>{{-1}, {1}});
    CHECK(weyl_orbit(D4, Weight{0, 0, 0, 0}).size() == 1);
    CHECK(weyl_orbit(B2, fundamental_weight(B2, 1)).size() == 4);
    CHECK(weyl_orbit(B2, fundamental_weight(B2, 2)).size() == 4);
    CHECK(weyl_orbit(D4, fundamental_weight(D4, 1)).size() == 8);
    CHECK(weyl_orbit(C3, fundamental_weight(C3, 1)).size() == 6);
    // Regular weights have free orbits.
    CHECK(weyl_orbit(B3, Weight{1, 1, 1}).size() == weyl_group_order(B3));
    CHECK(weyl_orbit(D4, Weight{1, 1, 1, 1}).size() == weyl_group_order(D4));
}

TEST_CASE("orbit properties over enumerated orbits") {
    for (const auto& f : small_factors()) {
        const std::uint64_t w = weyl_group_order(f);
        for (const auto& lambda : dominant_box(f, 2)) {
            auto orbit = weyl_orbit(f, lambda);
            CHECK(w % orbit.size() == 0);
            CHECK(std::is_sorted(orbit.begin(), orbit.end()));
            CHECK(std::binary_search(orbit.begin(), orbit.end(), lambda));
            Weight sum(lambda.size(), 0);
            for (const auto& mu : orbit)
                for (std::size_t k = 0; k < sum.size(); ++k)
                    sum[k] += mu[k];
            CHECK(std::all_of(sum.begin(), sum.end(), [](Coord c) { return c == 0; }));
            for (int j = 1; j <= f.rank; ++j)
                for (const auto& mu : orbit)
                    CHECK(std::binary_search(orbit.begin(), orbit.end(), reflect(f, j, mu)));
        }
    }
}

TEST_CASE("killing form is Weyl invariant") {
    for (const auto& f : small_factors()) {
        QForm q = killing_form(f);
        for (int j = 1; j <= f.rank; ++j) {
            // Substitute each basis symbol by its reflection: x_l -> s(x_l).
            std::vector<std::vector<invcalc::intlat::Int>> images(f.rank, std::vector<invcalc::intlat::Int>(f.rank));
            for (int l = 0; l < f.rank; ++l) {
                Weight e(f.rank, 0);
                e[l] = 1;
                Weight s = reflect(f, j, e);
                for (int k = 0; k < f.rank; ++k)
                    images[l][k] = static_cast<long>(s[k]);
            }
            CHECK(q.substituted(images) == q);
        }
    }
}

TEST_CASE("orbit sums of squares are multiples of q") {
    for (const auto& f : small_factors())
        for (const auto& lambda : dominant_box(f, 1)) {
            auto os = orbit_squares(f, lambda);
            auto kappa = os.sum_of_squares.coefficient(0, 0);
            CHECK(os.sum_of_squares == killing_form(f).scaled(kappa));
            CHECK(os.size == weyl_orbit(f, lambda).size());
        }
}

TEST_CASE("basis changes and dominance") {
    Weight a{1, 0, 2};
    CHECK(to_fundamental(C3, from_fundamental(C3, a)) == a);
    CHECK(from_fundamental(C3, Weight{0, 1, 0}) == fundamental_weight(C3, 2));
    CHECK(is_dominant(B3, Weight{1, 0, 1}));
    CHECK_FALSE(is_dominant(B3, Weight{-1, 0, 1}));
    CHECK(dominant_representative(B1, Weight{-3}) == Weight{3});
}

TEST_CASE("theta") {
    CHECK(theta(B3, 3) == 2);
    CHECK(theta(B3, 1) == 1);
    CHECK(theta(B1, 1) == 1);
    CHECK(theta(C3, 1) == 2);
    CHECK(theta(C3, 3) == 1);
    CHECK(theta(D5, 2) == 1);
}

TEST_CASE("weyl group orders") {
    CHECK(weyl_group_order(B3) == 48);
    CHECK(weyl_group_order(C2) == 8);
    CHECK(weyl_group_order(D4) == 192);
}
