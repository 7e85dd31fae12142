#include "invcalc/intlat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace invcalc::intlat {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw LatticeError(LatticeError::Kind::DimensionMismatch,
                               "row " + std::to_string(r) + " has length " +
                                   std::to_string(rows[r].size()) + ", expected " +
                                   std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.push_back(row(r));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_)
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0)
        return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    Int det = a(n - 1, n - 1);
    return sign < 0 ? Int(-det) : det;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (r != c && (*this)(r, c) != 0)
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Int& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                p(i, j) += aik * b(k, j);
        }
    return p;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? ", " : "") << (*this)(r, c).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    const std::size_t n = std::min(s.rows(), s.cols());
    while (r < n && s(r, r) != 0)
        ++r;
    return r;
}

IntVector SnfResult::diagonal() const {
    IntVector d;
    const std::size_t n = std::min(s.rows(), s.cols());
    for (std::size_t i = 0; i < n; ++i)
        d.push_back(s(i, i));
    return d;
}

namespace {

// Position of the nonzero entry of least absolute value in the block a[t.., t..].
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& a, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            if (!best || abs(a(i, j)) < abs(a(best->first, best->second)))
                best = std::make_pair(i, j);
        }
    return best;
}

}  // namespace

SnfResult snf(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        auto pos = smallest_entry(a, t);
        if (!pos)
            break;
        a.swap_rows(t, pos->first);
        u.swap_rows(t, pos->first);
        a.swap_cols(t, pos->second);
        v.swap_cols(t, pos->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0)
                    continue;
                Int q = a(i, t) / a(t, t);
                a.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0)
                    continue;
                Int q = a(t, j) / a(t, t);
                a.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // Bring the smallest remainder in row/column t to the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                a.swap_rows(t, bi);
                u.swap_rows(t, bi);
                a.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            a.add_row_multiple(t, *bad_row, Int(1));
            u.add_row_multiple(t, *bad_row, Int(1));
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

// ---------------------------------------------------------------------------
// Hermite normal form

IntMatrix hnf(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t p = 0;
    for (std::size_t c = 0; c < cols && p < rows; ++c) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t i = p; i < rows; ++i)
                if (a(i, c) != 0 && (!best || abs(a(i, c)) < abs(a(*best, c))))
                    best = i;
            if (!best)
                break;
            a.swap_rows(p, *best);
            bool clean = true;
            for (std::size_t i = p + 1; i < rows; ++i) {
                if (a(i, c) == 0)
                    continue;
                Int q = a(i, c) / a(p, c);
                a.add_row_multiple(i, p, -q);
                if (a(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (a(p, c) == 0)
            continue;
        if (a(p, c) < 0)
            a.negate_row(p);
        for (std::size_t i = 0; i < p; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(p, c).get_mpz_t());
            a.add_row_multiple(i, p, -q);
        }
        ++p;
    }
    IntMatrix out(p, cols);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = a(r, c);
    return out;
}

// ---------------------------------------------------------------------------
// Finite abelian groups

FiniteAbelianGroup::FiniteAbelianGroup(IntVector invariant_factors) : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2)
            throw std::invalid_argument("invariant factor " + factors_[i].get_str() + " is < 2");
        if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
            throw std::invalid_argument("invariant factors do not form a divisibility chain");
    }
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (const auto& f : factors_)
        o *= f;
    return o;
}

bool FiniteAbelianGroup::is_elementary_2_group() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Int& f) { return f == 2; });
}

std::size_t FiniteAbelianGroup::two_rank() const {
    return static_cast<std::size_t>(
        std::count_if(factors_.begin(), factors_.end(), [](const Int& f) { return f % 2 == 0; }));
}

std::string FiniteAbelianGroup::to_string() const {
    if (factors_.empty())
        return "0";
    if (factors_.front() == factors_.back()) {
        std::string base = "Z/" + factors_.front().get_str();
        if (factors_.size() == 1)
            return base;
        return "(" + base + ")^" + std::to_string(factors_.size());
    }
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        s += (i ? " x Z/" : "Z/") + factors_[i].get_str();
    return s;
}

// ---------------------------------------------------------------------------
// Sublattices

Sublattice::Sublattice(std::size_t ambient_dim, const std::vector<IntVector>& generators)
    : Sublattice(ambient_dim, IntMatrix::from_rows(generators, ambient_dim)) {}

Sublattice::Sublattice(std::size_t ambient_dim, const IntMatrix& generators) : dim_(ambient_dim) {
    if (generators.cols() != ambient_dim && generators.rows() != 0)
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "generator length differs from ambient dimension");
    basis_ = generators.rows() == 0 ? IntMatrix(0, ambient_dim) : hnf(generators);
}

Sublattice Sublattice::full(std::size_t m) { return Sublattice(m, IntMatrix::identity(m)); }

Sublattice Sublattice::zero(std::size_t m) { return Sublattice(m, IntMatrix(0, m)); }

Sublattice Sublattice::diagonal(const IntVector& scales) {
    IntMatrix g(scales.size(), scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i)
        g(i, i) = scales[i];
    return Sublattice(scales.size(), g);
}

std::optional<IntVector> Sublattice::coordinates(const IntVector& v) const {
    if (v.size() != dim_)
        throw LatticeError(LatticeError::Kind::DimensionMismatch,
                           "vector of length " + std::to_string(v.size()) + " in Z^" + std::to_string(dim_));
    IntVector rest = v;
    IntVector coords(rank());
    std::size_t col = 0;
    for (std::size_t r = 0; r < rank(); ++r) {
        while (basis_(r, col) == 0) {
            if (rest[col] != 0)
                return std::nullopt;
            ++col;
        }
        const Int& pivot = basis_(r, col);
        if (rest[col] % pivot != 0)
            return std::nullopt;
        coords[r] = rest[col] / pivot;
        for (std::size_t c = col; c < dim_; ++c)
            rest[c] -= coords[r] * basis_(r, c);
        ++col;
    }
    for (std::size_t c = 0; c < dim_; ++c)
        if (rest[c] != 0)
            return std::nullopt;
    return coords;
}

bool Sublattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
    if (other.dim_ != dim_)
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "lattices live in different ambient spaces");
    for (std::size_t r = 0; r < other.rank(); ++r)
        if (!contains(other.basis_.row(r)))
            return false;
    return true;
}

Int Sublattice::index() const {
    if (!is_full_rank())
        throw LatticeError(LatticeError::Kind::InfiniteQuotient, "index of a lattice that is not full rank");
    Int idx = 1;
    for (std::size_t r = 0; r < rank(); ++r)
        idx *= basis_(r, r);
    return idx;
}

std::string Sublattice::to_string() const { return basis_.to_string(); }

// ---------------------------------------------------------------------------
// Congruences

namespace {

// Integer points of the sublattice spanned by `basis` (rank k) satisfying one
// congruence, expressed as a new generating set.
std::vector<IntVector> restrict_once(const IntMatrix& basis, const IntVector& row, const Int& modulus) {
    const std::size_t k = basis.rows();
    const std::size_t m = basis.cols();
    IntVector values(k);
    bool trivial = true;
    for (std::size_t a = 0; a < k; ++a) {
        Int v = 0;
        for (std::size_t c = 0; c < m; ++c)
            v += basis(a, c) * row[c];
        if (modulus != 0)
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
        if (v != 0)
            trivial = false;
        values[a] = v;
    }
    if (trivial)
        return basis.row_list();

    // Kernel of c -> sum c_a values_a (+ t * modulus) via a 1 x n Smith form.
    const std::size_t n = modulus != 0 ? k + 1 : k;
    IntMatrix lin(1, n);
    for (std::size_t a = 0; a < k; ++a)
        lin(0, a) = values[a];
    if (modulus != 0)
        lin(0, k) = modulus;
    SnfResult s = snf(lin);
    const std::size_t r = s.rank();

    std::vector<IntVector> gens;
    for (std::size_t j = r; j < n; ++j) {
        IntVector g(m, Int(0));
        for (std::size_t a = 0; a < k; ++a) {
            const Int& coef = s.v(a, j);
            if (coef == 0)
                continue;
            for (std::size_t c = 0; c < m; ++c)
                g[c] += coef * basis(a, c);
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace

Sublattice restrict_lattice(const Sublattice& base, const CongruenceSystem& sys) {
    if (sys.m != base.ambient_dim())
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "congruence system dimension mismatch");
    Sublattice current = base;
    for (const auto& con : sys.constraints) {
        if (con.row.size() != sys.m)
            throw LatticeError(LatticeError::Kind::DimensionMismatch, "congruence row has wrong length");
        if (con.modulus < 0)
            throw std::invalid_argument("negative modulus");
        if (con.modulus == 1 || current.rank() == 0)
            continue;
        current = Sublattice(sys.m, restrict_once(current.basis(), con.row, con.modulus));
    }
    return current;
}

Sublattice solve_congruences(const CongruenceSystem& sys) { return restrict_lattice(Sublattice::full(sys.m), sys); }

FiniteAbelianGroup lattice_quotient(const Sublattice& big, const Sublattice& small) {
    if (big.ambient_dim() != small.ambient_dim())
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "quotient of lattices in different ambient spaces");
    std::vector<IntVector> coords;
    for (std::size_t r = 0; r < small.rank(); ++r) {
        auto c = big.coordinates(small.basis().row(r));
        if (!c)
            throw LatticeError(LatticeError::Kind::NotASubgroup,
                               "lattice " + small.to_string() + " is not contained in " + big.to_string());
        coords.push_back(std::move(*c));
    }
    if (small.rank() != big.rank())
        throw LatticeError(LatticeError::Kind::InfiniteQuotient,
                           "quotient of rank-" + std::to_string(big.rank()) + " lattice by rank-" +
                               std::to_string(small.rank()) + " sublattice is infinite");
    if (big.rank() == 0)
        return FiniteAbelianGroup{};
    SnfResult s = snf(IntMatrix::from_rows(coords, big.rank()));
    IntVector factors;
    for (const auto& d : s.diagonal())
        if (d != 1)
            factors.push_back(d);
    return FiniteAbelianGroup(std::move(factors));
}

bool lattice_member(const Sublattice& l, const IntVector& v) { return l.contains(v); }

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "sum of lattices in different ambient spaces");
    auto rows = a.basis().row_list();
    auto more = b.basis().row_list();
    rows.insert(rows.end(), more.begin(), more.end());
    return Sublattice(a.ambient_dim(), rows);
}

bool lattice_equal(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw LatticeError(LatticeError::Kind::DimensionMismatch, "comparison of lattices in different ambient spaces");
    return a == b;
}

IntVector to_int_vector(std::initializer_list<long> values) {
    IntVector v;
    for (long x : values)
        v.emplace_back(x);
    return v;
}

}  // namespace invcalc::intlat
