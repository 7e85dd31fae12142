#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "invcalc/groupspec.hpp"

using namespace invcalc::groupspec;
using invcalc::intlat::IntMatrix;
using invcalc::intlat::to_int_vector;

namespace {

SemisimpleGroup make(DynkinType t, std::vector<int> ranks, std::vector<CenterElem> gens) {
    GroupSpec spec;
    for (int n : ranks)
        spec.factors.push_back({t, n});
    spec.r_generators = std::move(gens);
    return SemisimpleGroup(spec);
}

std::vector<SimpleFactor> factors_of(DynkinType t, std::vector<int> ranks) {
    std::vector<SimpleFactor> out;
    for (int n : ranks)
        out.push_back({t, n});
    return out;
}

}  // namespace

TEST_CASE("closure of generators") {
    auto b = make(DynkinType::B, {1, 1}, {{1, 1}});
    CHECK(b.r().size() == 2);
    CHECK(b.r().contains(CenterElem{1, 1}));
    CHECK_FALSE(b.r().contains(CenterElem{1, 0}));

    CHECK(make(DynkinType::D, {5}, {{1}}).r().size() == 4);
    CHECK(make(DynkinType::D, {5}, {{2}}).r().size() == 2);
    CHECK(make(DynkinType::D, {4}, {{1, 0}, {0, 1}}).r().size() == 4);
}

TEST_CASE("validation errors") {
    auto kind = [](GroupSpec spec) {
        try {
            validate_and_close(spec);
        } catch (const SpecError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind({{{DynkinType::B, 1}}, {{2}}}) == static_cast<int>(SpecError::Kind::MalformedGenerator));
    CHECK(kind({{{DynkinType::B, 1}}, {{1, 0}}}) == static_cast<int>(SpecError::Kind::MalformedGenerator));
    CHECK(kind({{{DynkinType::B, 1}, {DynkinType::C, 1}}, {}}) == static_cast<int>(SpecError::Kind::MixedTypes));
    CHECK(kind({{{DynkinType::D, 2}}, {}}) == static_cast<int>(SpecError::Kind::InvalidFactor));
    CHECK(kind({{}, {}}) == static_cast<int>(SpecError::Kind::NoFactors));
}

TEST_CASE("character lattices") {
    CHECK(make(DynkinType::B, {3}, {{1}}).char_lattice() == invcalc::intlat::Sublattice::full(3));
    CHECK(make(DynkinType::B, {1}, {}).char_lattice().basis() == IntMatrix{{2}});
    CHECK(make(DynkinType::C, {2}, {}).char_lattice().basis() == (IntMatrix{{1, 1}, {0, 2}}));
}

TEST_CASE("weight orders") {
    CHECK(make(DynkinType::B, {3}, {{1}}).weight_order(0, 2) == 1);
    CHECK(make(DynkinType::B, {1}, {}).weight_order(0, 1) == 2);
    CHECK(make(DynkinType::D, {5}, {}).weight_order(0, 5) == 4);
    CHECK(make(DynkinType::D, {5}, {{2}}).weight_order(0, 5) == 2);
    CHECK(make(DynkinType::D, {4}, {{1, 1}}).weight_order(0, 1) == 1);
    CHECK(make(DynkinType::D, {4}, {{1, 1}}).weight_order(0, 3) == 2);
}

TEST_CASE("subgroup enumeration counts") {
    CHECK(enumerate_subgroups(factors_of(DynkinType::B, {1})).size() == 2);
    CHECK(enumerate_subgroups(factors_of(DynkinType::B, {1, 1})).size() == 5);
    CHECK(enumerate_subgroups(factors_of(DynkinType::D, {3})).size() == 3);
    CHECK(enumerate_subgroups(factors_of(DynkinType::B, {1, 2, 3})).size() == 16);
    CHECK(enumerate_subgroups(factors_of(DynkinType::D, {4, 4})).size() == 67);
    // Z/4 x Z/4 has 15 subgroups.
    CHECK(enumerate_subgroups(factors_of(DynkinType::D, {3, 5})).size() == 15);
    CHECK_THROWS_AS(enumerate_subgroups(factors_of(DynkinType::D, std::vector<int>(11, 4))), SpecError);
}

TEST_CASE("enumeration order and uniqueness") {
    auto subs = enumerate_subgroups(factors_of(DynkinType::D, {4, 3}));
    for (std::size_t k = 0; k + 1 < subs.size(); ++k) {
        CHECK(subs[k].size() <= subs[k + 1].size());
        if (subs[k].size() == subs[k + 1].size())
            CHECK(subs[k].elements() < subs[k + 1].elements());
    }
    for (const auto& s : subs)
        CHECK(RSubgroup(s.layout(), s.canonical_generators()) == s);
}

TEST_CASE("lattice properties over enumerated subgroups") {
    for (auto [t, ranks] : std::vector<std::pair<DynkinType, std::vector<int>>>{
             {DynkinType::B, {1, 2}}, {DynkinType::C, {2, 3}}, {DynkinType::D, {4, 5}}, {DynkinType::D, {3, 6}}}) {
        auto fs = factors_of(t, ranks);
        auto subs = enumerate_subgroups(fs);
        std::vector<SemisimpleGroup> groups;
        for (const auto& r : subs)
            groups.emplace_back(GroupSpec{fs, r.canonical_generators()});
        const std::uint64_t z = groups.front().layout().order();
        for (const auto& g : groups) {
            // [Λ : T*] = |Z / R|
            CHECK(g.char_lattice().index() * g.r().size() == z);
            int exponent = 1;
            for (int f : g.quotient_factors())
                exponent = std::lcm(exponent, f);
            for (std::size_t i = 0; i < g.m(); ++i)
                for (int j = 1; j <= g.factor(i).rank; ++j)
                    CHECK(exponent % g.weight_order(i, j) == 0);
            // The root lattice always lies in T*.
            for (std::size_t i = 0; i < g.m(); ++i)
                for (const auto& root : invcalc::rootdata::simple_roots(g.factor(i))) {
                    invcalc::intlat::IntVector v(g.weight_dim(), 0);
                    for (std::size_t k = 0; k < root.size(); ++k)
                        v[g.weight_offset(i) + k] = static_cast<long>(root[k]);
                    CHECK(g.char_lattice().contains(v));
                }
        }
        for (const auto& a : groups)
            for (const auto& b : groups)
                if (b.r().contains(a.r()))
                    CHECK(b.char_lattice().contains(a.char_lattice()));
    }
}

TEST_CASE("membership agrees with the center map") {
    auto g = make(DynkinType::D, {4, 3}, {{1, 1, 2}});
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -1; c <= 1; ++c) {
                invcalc::rootdata::Weight w{a, 0, b, c, 0, a + c, b};
                invcalc::intlat::IntVector v(w.begin(), w.end());
                CHECK(g.in_char_lattice(w) == g.char_lattice().contains(v));
            }
}

TEST_CASE("center element display") {
    CenterLayout layout(factors_of(DynkinType::D, {4, 5}));
    CHECK(center_elem_to_string(layout, {1, 0, 2}) == "e1,1+2e2");
    CHECK(center_elem_to_string(layout, {0, 0, 0}) == "0");
}
