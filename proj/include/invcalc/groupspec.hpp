#pragma once

// Group specifications G = (prod G_i) / mu, described dually by a subgroup R
// of the character group Z of the center of the simply connected cover.

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "invcalc/intlat.hpp"
#include "invcalc/rootdata.hpp"

namespace invcalc::groupspec {

using intlat::Int;
using intlat::IntVector;
using intlat::Sublattice;
using rootdata::Coord;
using rootdata::DynkinType;
using rootdata::SimpleFactor;
using rootdata::Weight;

class SpecError : public std::runtime_error {
public:
    enum class Kind { NoFactors, InvalidFactor, MixedTypes, MalformedGenerator, CenterTooLarge };

    SpecError(Kind kind, std::string field, const std::string& what)
        : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

    Kind kind() const noexcept { return kind_; }
    /// Name of the offending input field, e.g. "factors[1].rank".
    const std::string& field() const noexcept { return field_; }

private:
    Kind kind_;
    std::string field_;
};

/// An element of Z = (+) Z_i, one residue per cyclic component. Factors of
/// type B, C and odd D contribute one component (mod 2, 2, 4); even D
/// contributes two components mod 2, in the order e_{i,1}, e_{i,2}.
using CenterElem = std::vector<int>;

class CenterLayout {
public:
    CenterLayout() = default;
    explicit CenterLayout(const std::vector<SimpleFactor>& factors);

    std::size_t components() const noexcept { return moduli_.size(); }
    std::size_t factors() const noexcept { return offset_.size(); }
    const std::vector<int>& moduli() const noexcept { return moduli_; }
    std::size_t offset(std::size_t i) const { return offset_.at(i); }
    std::size_t width(std::size_t i) const { return width_.at(i); }
    /// |Z|, saturating at UINT64_MAX.
    std::uint64_t order() const noexcept { return order_; }

    CenterElem zero() const { return CenterElem(components(), 0); }
    CenterElem add(const CenterElem& a, const CenterElem& b) const;
    CenterElem scale(const CenterElem& a, long k) const;
    bool well_formed(const CenterElem& e) const;
    /// Generator of the k-th cyclic component of factor i (e_i, e_{i,1}, e_{i,2}).
    CenterElem unit(std::size_t i, std::size_t k = 0) const;
    bool supported_on(const CenterElem& e, std::size_t i) const;
    /// Order of e in Z.
    int element_order(const CenterElem& e) const;

    /// Mixed-radix code of e, a bijection Z -> [0, |Z|).
    std::uint64_t encode(const CenterElem& e) const;
    CenterElem decode(std::uint64_t code) const;

private:
    std::vector<int> moduli_;
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> width_;
    std::uint64_t order_ = 1;
};

struct GroupSpec {
    std::vector<SimpleFactor> factors;
    std::vector<CenterElem> r_generators;
};

/// Explicit finite subgroup of Z.
class RSubgroup {
public:
    RSubgroup() = default;
    /// Closure of `generators` under addition; generators must be well formed.
    RSubgroup(const CenterLayout& layout, const std::vector<CenterElem>& generators);

    const CenterLayout& layout() const noexcept { return layout_; }
    /// All elements, sorted lexicographically; the first is 0.
    const std::vector<CenterElem>& elements() const noexcept { return elements_; }
    const std::vector<CenterElem>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool contains(const CenterElem& e) const;
    bool contains(const RSubgroup& other) const;
    /// Elements of R lying in Z_i (that is, R ∩ Z_i), as residues on factor i's components.
    std::vector<std::vector<int>> factor_part(std::size_t i) const;
    /// Greedy minimal generating set, scanning elements in sorted order.
    std::vector<CenterElem> canonical_generators() const;

    friend bool operator==(const RSubgroup& a, const RSubgroup& b) { return a.elements_ == b.elements_; }

private:
    CenterLayout layout_;
    std::vector<CenterElem> generators_;
    std::vector<CenterElem> elements_;
    std::set<std::uint64_t> codes_;
};

/// A validated specification with its relation subgroup and character lattice.
class SemisimpleGroup {
public:
    explicit SemisimpleGroup(GroupSpec spec);

    const GroupSpec& spec() const noexcept { return spec_; }
    const CenterLayout& layout() const noexcept { return layout_; }
    const RSubgroup& r() const noexcept { return r_; }

    DynkinType type() const { return spec_.factors.front().type; }
    std::size_t m() const noexcept { return spec_.factors.size(); }
    const SimpleFactor& factor(std::size_t i) const { return spec_.factors.at(i); }
    /// Global weight coordinates: factor i occupies [weight_offset(i), weight_offset(i) + n_i).
    std::size_t weight_offset(std::size_t i) const { return offsets_.at(i); }
    std::size_t weight_dim() const noexcept { return dim_; }

    /// Image of a global weight in Z.
    CenterElem center_image(const Weight& w) const;
    bool in_char_lattice(const Weight& w) const { return r_.contains(center_image(w)); }

    const Sublattice& char_lattice() const noexcept { return t_star_; }
    /// Order of the image of the fundamental weight w_{i,j} (0-based i, 1-based j) in Λ/T*.
    int weight_order(std::size_t i, int j) const;
    /// Invariant factors of Z/R.
    const std::vector<int>& quotient_factors() const noexcept { return quotient_factors_; }

private:
    GroupSpec spec_;
    CenterLayout layout_;
    RSubgroup r_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
    Sublattice t_star_;
    std::vector<int> quotient_factors_;
    std::vector<std::vector<Int>> characters_;  // Z -> Z/f_j, one row per quotient factor
};

/// Validates the specification and returns the subgroup generated by its generators.
RSubgroup validate_and_close(const GroupSpec& spec);
Sublattice char_lattice(const SemisimpleGroup& g);
int weight_order(const SemisimpleGroup& g, std::size_t i, int j);

/// Every subgroup of Z exactly once, sorted by size then by element list.
/// Throws CenterTooLarge if |Z| > 2^20.
std::vector<RSubgroup> enumerate_subgroups(const std::vector<SimpleFactor>& factors);

/// Display form of a center element: "e1+e2", "2e1", "e1,1+e2", "0".
std::string center_elem_to_string(const CenterLayout& layout, const CenterElem& e);

}  // namespace invcalc::groupspec
