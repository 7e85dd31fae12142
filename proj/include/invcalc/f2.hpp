#pragma once

// Subspaces of F_2^m for m <= 64, vectors packed as bit masks (bit i = coordinate i).

#include <bit>
#include <cstdint>
#include <vector>

namespace invcalc::f2 {

using Vec = std::uint64_t;

inline Vec unit(unsigned i) { return Vec{1} << i; }

class Space {
public:
    Space() = default;
    explicit Space(const std::vector<Vec>& generators) {
        for (Vec v : generators)
            insert(v);
    }

    /// Reduce v against the echelon basis; zero iff v is in the span.
    Vec reduce(Vec v) const {
        for (Vec b : basis_)
            if (v & top(b))
                v ^= b;
        return v;
    }
    bool contains(Vec v) const { return reduce(v) == 0; }

    /// Adds v; returns false if it was already in the span.
    bool insert(Vec v) {
        v = reduce(v);
        if (v == 0)
            return false;
        for (Vec& b : basis_)
            if (b & top(v))
                b ^= v;
        basis_.push_back(v);
        return true;
    }

    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }

    std::vector<Vec> elements() const {
        std::vector<Vec> out{0};
        for (Vec b : basis_) {
            const std::size_t n = out.size();
            for (std::size_t k = 0; k < n; ++k)
                out.push_back(out[k] ^ b);
        }
        return out;
    }

    Space intersect(const Space& other) const {
        Space out;
        for (Vec v : elements())
            if (other.contains(v))
                out.insert(v);
        return out;
    }

private:
    static Vec top(Vec v) { return Vec{1} << (63 - std::countl_zero(v)); }

    std::vector<Vec> basis_;
};

/// Orthogonal complement in F_2^m under the standard dot product.
inline Space perp(const Space& s, unsigned m) {
    // The basis is reduced echelon, so each free coordinate j yields
    // e_j + sum of e_pivot(b) over basis vectors b with b_j = 1.
    Vec pivots = 0;
    for (Vec b : s.basis())
        pivots |= Vec{1} << (63 - std::countl_zero(b));
    Space out;
    for (unsigned j = 0; j < m; ++j) {
        if (pivots & unit(j))
            continue;
        Vec f = unit(j);
        for (Vec b : s.basis())
            if (b & unit(j))
                f |= Vec{1} << (63 - std::countl_zero(b));
        out.insert(f);
    }
    return out;
}

}  // namespace invcalc::f2
