#pragma once

// Root data for the classical families B_n, C_n, D_n.
//
// Weights of a factor are integer coordinate vectors. Types B and D use the
// fundamental-weight basis w_1..w_n; type C uses the orthonormal basis
// e_1..e_n, which is a Z-basis of the C_n weight lattice. Reflections act
// through the simple roots and coroots written in those coordinates, so the
// same machinery serves all three types.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "invcalc/intlat.hpp"

namespace invcalc::rootdata {

using intlat::Int;
using intlat::IntMatrix;

using Coord = std::int64_t;
using Weight = std::vector<Coord>;

enum class DynkinType { B, C, D };

char type_letter(DynkinType t);
DynkinType parse_type(char c);

struct SimpleFactor {
    DynkinType type = DynkinType::B;
    int rank = 1;

    /// Throws std::invalid_argument unless B/C have rank >= 1 and D has rank >= 3.
    void validate() const;
    std::string name() const;  // "B3", "D4", ...

    friend bool operator==(const SimpleFactor&, const SimpleFactor&) = default;
    friend auto operator<=>(const SimpleFactor&, const SimpleFactor&) = default;
};

/// Integer quadratic form: coefficients of the monomials x_k x_l (k <= l)
/// in a global basis of the weight lattice.
class QForm {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    const Int& coefficient(std::size_t k, std::size_t l) const;
    void add(std::size_t k, std::size_t l, const Int& c);
    const std::map<Key, Int>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    QForm scaled(const Int& k) const;
    QForm& operator+=(const QForm& other);

    /// Substitute x_k -> sum_l images[k][l] x_l for every basis index k < images.size().
    QForm substituted(const std::vector<std::vector<Int>>& images) const;

    std::string to_string(const std::string& symbol = "x") const;

    friend bool operator==(const QForm&, const QForm&) = default;

private:
    std::map<Key, Int> terms_;
};

/// n x n Cartan matrix with entry (i, j) = <alpha_j, alpha_i^vee>.
/// Column j holds alpha_j in fundamental-weight coordinates.
IntMatrix cartan_matrix(const SimpleFactor& f);

/// Simple roots alpha_1..alpha_n in the factor's coordinates.
std::vector<Weight> simple_roots(const SimpleFactor& f);
/// Simple coroots as linear functionals on the factor's coordinates:
/// <w, alpha_j^vee> = dot(simple_coroots(f)[j], w).
std::vector<Weight> simple_coroots(const SimpleFactor& f);

/// Fundamental weight w_j (1-based) in the factor's coordinates.
Weight fundamental_weight(const SimpleFactor& f, int j);
/// Weight with the given fundamental-weight coefficients, in factor coordinates.
Weight from_fundamental(const SimpleFactor& f, std::span<const Coord> coefficients);
/// Fundamental-weight coefficients <w, alpha_j^vee> of a weight.
Weight to_fundamental(const SimpleFactor& f, std::span<const Coord> w);

Weight reflect(const SimpleFactor& f, int j, std::span<const Coord> w);
bool is_dominant(const SimpleFactor& f, std::span<const Coord> w);
Weight dominant_representative(const SimpleFactor& f, std::span<const Coord> w);

/// Normalized Killing form of the factor, on basis indices offset .. offset+n-1.
QForm killing_form(const SimpleFactor& f, std::size_t offset = 0);

/// Cyclic moduli of the character group of the center: {2} for B and C,
/// {4} for D with n odd, {2, 2} for D with n even.
std::vector<int> center_group(const SimpleFactor& f);

/// Image of a weight in the character group of the center, one residue per
/// cyclic component of center_group(f), reduced to [0, modulus).
std::vector<int> weight_center_image(const SimpleFactor& f, std::span<const Coord> w);
/// The same map as integer linear forms on the factor's coordinates (before reduction).
std::vector<Weight> center_map_rows(const SimpleFactor& f);

/// W-orbit of w, sorted lexicographically.
std::vector<Weight> weyl_orbit(const SimpleFactor& f, std::span<const Coord> w);

/// Orbit size together with sum_{mu in W(w)} mu^2 as a quadratic form on
/// basis indices 0..n-1.
struct OrbitSquares {
    std::uint64_t size = 0;
    QForm sum_of_squares;
};
OrbitSquares orbit_squares(const SimpleFactor& f, std::span<const Coord> w);

/// Order of the Weyl group: 2^n n! for B_n and C_n, 2^(n-1) n! for D_n.
std::uint64_t weyl_group_order(const SimpleFactor& f);

/// Squared length of the coroot of the j-th simple root (1-based), measured
/// with the normalized Killing form.
int theta(const SimpleFactor& f, int j);

}  // namespace invcalc::rootdata
