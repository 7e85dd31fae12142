#pragma once

// Exact integer matrices and lattices: Smith and Hermite normal forms,
// congruence systems, sublattices of Z^m and finite abelian quotients.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace invcalc::intlat {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class LatticeError : public std::runtime_error {
public:
    enum class Kind { NotASubgroup, InfiniteQuotient, DimensionMismatch };

    LatticeError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    /// Every row must have exactly `cols` entries.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    std::vector<IntVector> row_list() const;

    IntMatrix transpose() const;
    /// Bareiss fraction-free elimination; square matrices only.
    Int determinant() const;
    bool is_diagonal() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
    void negate_row(std::size_t r);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// U * A * V = S with U, V unimodular and S diagonal with d1 | d2 | ...
struct SnfResult {
    IntMatrix u;
    IntMatrix s;
    IntMatrix v;

    std::size_t rank() const;
    IntVector diagonal() const;
};

SnfResult snf(const IntMatrix& a);

/// Row Hermite normal form of the lattice spanned by the rows of `a`:
/// echelon, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result has exactly rank(a) rows.
IntMatrix hnf(const IntMatrix& a);

/// Finite abelian group given by invariant factors f1 | f2 | ..., each >= 2.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(IntVector invariant_factors);

    const IntVector& invariant_factors() const noexcept { return factors_; }
    Int order() const;
    bool is_trivial() const noexcept { return factors_.empty(); }
    /// True when every invariant factor equals 2 (the trivial group included).
    bool is_elementary_2_group() const;
    /// Number of invariant factors divisible by 2.
    std::size_t two_rank() const;

    /// "0", "(Z/2)^3", "Z/2 x Z/4", ...
    std::string to_string() const;

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    IntVector factors_;
};

/// Sublattice of Z^m, stored canonically as a row HNF basis.
class Sublattice {
public:
    Sublattice() = default;
    /// Lattice generated by `generators` (any number of rows, any rank).
    Sublattice(std::size_t ambient_dim, const std::vector<IntVector>& generators);
    Sublattice(std::size_t ambient_dim, const IntMatrix& generators);

    static Sublattice full(std::size_t m);
    static Sublattice zero(std::size_t m);
    /// The lattice k1*Z x k2*Z x ...
    static Sublattice diagonal(const IntVector& scales);

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.rows(); }
    bool is_full_rank() const noexcept { return rank() == dim_; }
    const IntMatrix& basis() const noexcept { return basis_; }

    bool contains(const IntVector& v) const;
    bool contains(const Sublattice& other) const;
    /// Integer coordinates of `v` in the stored basis, if `v` is a member.
    std::optional<IntVector> coordinates(const IntVector& v) const;
    /// Index [Z^m : L]; requires full rank.
    Int index() const;

    friend bool operator==(const Sublattice&, const Sublattice&) = default;

    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    IntMatrix basis_;
};

struct Congruence {
    IntVector row;
    Int modulus;  // 0 encodes exact equality row . d == 0
};

struct CongruenceSystem {
    std::size_t m = 0;
    std::vector<Congruence> constraints;

    void add(IntVector row, Int modulus) { constraints.push_back({std::move(row), std::move(modulus)}); }
};

/// {d in Z^m : row . d == 0 (mod modulus) for every constraint}.
Sublattice solve_congruences(const CongruenceSystem& sys);
/// {d in base : row . d == 0 (mod modulus) for every constraint}.
Sublattice restrict_lattice(const Sublattice& base, const CongruenceSystem& sys);

FiniteAbelianGroup lattice_quotient(const Sublattice& big, const Sublattice& small);
bool lattice_member(const Sublattice& l, const IntVector& v);
Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);
bool lattice_equal(const Sublattice& a, const Sublattice& b);

IntVector to_int_vector(std::initializer_list<long> values);

}  // namespace invcalc::intlat
