#pragma once

// Degree-3 invariant groups: Q/Dec and the reductive part, the closed-form
// ranks they are compared against, and a labelled generator set.

#include <optional>
#include <string>
#include <vector>

#include "invcalc/f2.hpp"
#include "invcalc/groupspec.hpp"
#include "invcalc/intlat.hpp"

namespace invcalc::invariants {

using groupspec::SemisimpleGroup;
using intlat::FiniteAbelianGroup;
using intlat::Sublattice;

/// Quantities entering the rank formulas. Factor index sets are 0-based.
/// Unused fields stay zero / empty for the other types.
struct RankData {
    std::size_t m = 0;
    std::size_t dim_r = 0;  // F_2-dimension of R (B, C)
    std::size_t k = 0;      // m - dim_r (B, C)
    std::size_t l = 0;
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    std::size_t s = 0;  // C: number of n_i divisible by 4
    std::size_t s1 = 0;
    std::size_t s2 = 0;
    std::vector<std::size_t> i1;  // D
    std::vector<std::size_t> i2;  // D
    f2::Space r_bar;              // D: R-bar in F_2^m
    f2::Space r_prime;            // D: R'
};

RankData rank_data(const SemisimpleGroup& g);

FiniteAbelianGroup inv_ind(const SemisimpleGroup& g);
FiniteAbelianGroup inv_red(const SemisimpleGroup& g);

int inv_red_rank_theorem(const SemisimpleGroup& g);
/// Defined for type B with all n_i >= 2 and type C with all n_i even.
std::optional<int> inv_ind_rank_corollary(const SemisimpleGroup& g);

struct GeneratorEntry {
    enum class Kind { E3Phi, Delta, DeltaPrime, E3 };
    Kind kind = Kind::E3Phi;
    f2::Vec r = 0;           // E3Phi: coordinates in F_2^m (R for B/C, R-bar for D)
    std::size_t factor = 0;  // Delta, DeltaPrime, E3: 0-based factor index
    std::string label;       // "e3_phi(e1+e2)", "Delta(1)", "DeltaPrime(2)", "e3(1)"
};

struct GeneratorReport {
    std::vector<GeneratorEntry> entries;
    std::vector<std::string> kernel;  // basis of the kernel the source was reduced by
};

GeneratorReport generator_report(const SemisimpleGroup& g);

std::string unramified_status(const SemisimpleGroup& g);

/// Everything a report needs, computed once.
struct Analysis {
    Sublattice char_lattice;
    Sublattice q;
    Sublattice dec;
    Sublattice reductive;
    FiniteAbelianGroup ind;
    FiniteAbelianGroup red;
    int theorem_rank = 0;
    std::optional<int> corollary_rank;
    GeneratorReport generators;
};

Analysis analyze(const SemisimpleGroup& g);

}  // namespace invcalc::invariants
