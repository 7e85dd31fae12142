#include "invcalc/qdec.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "invcalc/f2.hpp"

namespace invcalc::qdec {

using groupspec::CenterElem;
using rootdata::Coord;
using rootdata::DynkinType;
using rootdata::SimpleFactor;

namespace {

using Rational = mpq_class;
using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix invert(const intlat::IntMatrix& b) {
    const std::size_t n = b.rows();
    RatMatrix a(n, std::vector<Rational>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = Rational(b(r, c));
        a[r][n + r] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            throw std::logic_error("character lattice basis is singular");
        std::swap(a[piv], a[col]);
        Rational inv = 1 / a[col][col];
        for (auto& x : a[col])
            x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            Rational k = a[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c)
                a[r][c] -= k * a[col][c];
        }
    }
    RatMatrix out(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out[r][c] = a[r][n + c];
    return out;
}

std::vector<Coord> factor_slice(const SemisimpleGroup& g, const Weight& w, std::size_t i) {
    auto off = static_cast<std::ptrdiff_t>(g.weight_offset(i));
    return {w.begin() + off, w.begin() + off + g.factor(i).rank};
}

// kappa with sum_{mu in orbit} mu^2 = kappa * q; asserts the orbit sum lies on the line Z q.
Int orbit_kappa(const SimpleFactor& f, const rootdata::OrbitSquares& os) {
    const Int kappa = os.sum_of_squares.coefficient(0, 0);
    if (!(os.sum_of_squares == rootdata::killing_form(f).scaled(kappa)))
        throw QDecError(QDecError::Kind::NotInKillingSpan,
                        "orbit sum of squares is not a multiple of the Killing form for " + f.name());
    return kappa;
}

Int halve_exact(const Int& x) {
    if (mpz_odd_p(x.get_mpz_t()))
        throw QDecError(QDecError::Kind::NonIntegralC2, "c2 has a non-integral coefficient");
    return x / 2;
}

f2::Vec to_mask(const CenterElem& e) {
    f2::Vec v = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0)
            v |= f2::unit(static_cast<unsigned>(i));
    return v;
}

// R as a subspace of F_2^m; types B and C only.
f2::Space r_space(const SemisimpleGroup& g) {
    if (g.m() > 64)
        throw std::invalid_argument("at most 64 factors are supported");
    f2::Space s;
    for (const auto& e : g.r().elements())
        s.insert(to_mask(e));
    return s;
}

bool has_unit(const f2::Space& r, std::size_t i) { return r.contains(f2::unit(static_cast<unsigned>(i))); }

IntVector unit_d(std::size_t m, std::size_t i, long k) {
    IntVector v(m, 0);
    v[i] = k;
    return v;
}

IntVector pair_d(std::size_t m, std::size_t i, std::size_t j, long k) {
    IntVector v(m, 0);
    v[i] = k;
    v[j] = k;
    return v;
}

Sublattice closed_q(const SemisimpleGroup& g, const std::vector<long>& weights) {
    const std::size_t m = g.m();
    f2::Space r = r_space(g);
    f2::Space chars = f2::perp(r, static_cast<unsigned>(m));
    intlat::CongruenceSystem sys;
    sys.m = m;
    for (f2::Vec f : chars.elements()) {
        if (f == 0)
            continue;
        IntVector row(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (f & f2::unit(static_cast<unsigned>(i)))
                row[i] = weights[i];
        sys.add(std::move(row), 4);
    }
    return intlat::solve_congruences(sys);
}

// Per-factor classes of dominant weights for the oracle: weights with the same
// center image, orbit size and kappa contribute identically.
struct OrbitClass {
    std::vector<int> center;
    std::uint64_t size;
    Int kappa;
};

using ClassKey = std::tuple<rootdata::DynkinType, int, int>;

const std::vector<OrbitClass>& orbit_classes(const SimpleFactor& f, int height) {
    static std::mutex mu;
    static std::map<ClassKey, std::vector<OrbitClass>> cache;
    const ClassKey key{f.type, f.rank, height};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    std::map<std::tuple<std::vector<int>, std::uint64_t, Int>, bool> seen;
    std::vector<OrbitClass> classes;
    std::vector<Coord> a(static_cast<std::size_t>(f.rank), 0);
    for (;;) {
        Weight w = rootdata::from_fundamental(f, a);
        auto os = rootdata::orbit_squares(f, w);
        Int kappa = orbit_kappa(f, os);
        auto center = rootdata::weight_center_image(f, w);
        if (seen.emplace(std::make_tuple(center, os.size, kappa), true).second)
            classes.push_back({center, os.size, kappa});
        std::size_t k = 0;
        while (k < a.size() && a[k] == height)
            a[k++] = 0;
        if (k == a.size())
            break;
        ++a[k];
    }
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(classes)).first->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Q(G)

Sublattice q_group(const SemisimpleGroup& g) {
    const std::size_t m = g.m();
    const std::size_t n = g.weight_dim();
    const RatMatrix binv = invert(g.char_lattice().basis());

    // coeffs[i][(a, b)]: coefficient of t_a t_b in q_i written in the T* basis t.
    std::vector<std::map<std::pair<std::size_t, std::size_t>, Rational>> coeffs(m);
    for (std::size_t i = 0; i < m; ++i) {
        QForm q = rootdata::killing_form(g.factor(i), g.weight_offset(i));
        // q = w^T C w with w = Binv t, so q = t^T (Binv^T C Binv) t.
        RatMatrix c(n, std::vector<Rational>(n));
        for (const auto& [kl, v] : q.terms()) {
            auto [k, l] = kl;
            if (k == l) {
                c[k][k] += Rational(v);
            } else {
                c[k][l] += Rational(v) / 2;
                c[l][k] += Rational(v) / 2;
            }
        }
        RatMatrix cb(n, std::vector<Rational>(n));  // C * Binv
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) {
                if (c[r][s] == 0)
                    continue;
                for (std::size_t t = 0; t < n; ++t)
                    cb[r][t] += c[r][s] * binv[s][t];
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                Rational x = 0;
                for (std::size_t r = 0; r < n; ++r)
                    x += binv[r][a] * cb[r][b];
                if (a != b)
                    x *= 2;
                if (x != 0)
                    coeffs[i][{a, b}] = x;
            }
    }

    intlat::CongruenceSystem sys;
    sys.m = m;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Int lcm = 1;
            for (std::size_t i = 0; i < m; ++i)
                if (auto it = coeffs[i].find({a, b}); it != coeffs[i].end())
                    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), it->second.get_den_mpz_t());
            if (lcm == 1)
                continue;
            IntVector row(m, 0);
            for (std::size_t i = 0; i < m; ++i)
                if (auto it = coeffs[i].find({a, b}); it != coeffs[i].end())
                    row[i] = it->second.get_num() * (lcm / it->second.get_den());
            sys.add(std::move(row), lcm);
        }
    return intlat::solve_congruences(sys);
}

bool q_closed_form_applies(const SemisimpleGroup& g) {
    if (g.type() == DynkinType::D)
        return false;
    bool all = true;
    for (std::size_t i = 0; i < g.m(); ++i) {
        int n = g.factor(i).rank;
        if (g.type() == DynkinType::B ? n < 2 : n % 2 != 0)
            all = false;
    }
    if (all)
        return true;
    f2::Space r = r_space(g);
    f2::Space r1, r2;
    for (std::size_t i = 0; i < g.m(); ++i)
        if (has_unit(r, i))
            r1.insert(f2::unit(static_cast<unsigned>(i)));
    for (std::size_t i = 0; i < g.m(); ++i)
        for (std::size_t j = i + 1; j < g.m(); ++j) {
            f2::Vec v = f2::unit(static_cast<unsigned>(i)) | f2::unit(static_cast<unsigned>(j));
            if (r.contains(v) && !r1.contains(f2::unit(static_cast<unsigned>(i))) &&
                !r1.contains(f2::unit(static_cast<unsigned>(j))))
                r2.insert(v);
        }
    return r1.dim() + r2.dim() == r.dim();
}

Sublattice q_group_closed_b(const SemisimpleGroup& g) {
    if (g.type() != DynkinType::B || !q_closed_form_applies(g))
        throw QDecError(QDecError::Kind::HypothesisNotSatisfied, "closed form for Q(G) of type B does not apply");
    f2::Space r = r_space(g);
    std::vector<long> delta(g.m());
    for (std::size_t i = 0; i < g.m(); ++i)
        delta[i] = (g.factor(i).rank >= 2 || has_unit(r, i)) ? 2 : 1;
    return closed_q(g, delta);
}

Sublattice q_group_closed_c(const SemisimpleGroup& g) {
    if (g.type() != DynkinType::C || !q_closed_form_applies(g))
        throw QDecError(QDecError::Kind::HypothesisNotSatisfied, "closed form for Q(G) of type C does not apply");
    f2::Space r = r_space(g);
    std::vector<long> w(g.m());
    for (std::size_t i = 0; i < g.m(); ++i)
        w[i] = has_unit(r, i) ? 2 : g.factor(i).rank;
    return closed_q(g, w);
}

// ---------------------------------------------------------------------------
// c2

DVector killing_coordinates(const SemisimpleGroup& g, const QForm& form) {
    DVector d(g.m());
    QForm rebuilt;
    for (std::size_t i = 0; i < g.m(); ++i) {
        const std::size_t off = g.weight_offset(i);
        d[i] = form.coefficient(off, off);
        rebuilt += rootdata::killing_form(g.factor(i), off).scaled(d[i]);
    }
    if (!(rebuilt == form))
        throw QDecError(QDecError::Kind::NotInKillingSpan, "form is not a combination of the Killing forms");
    return d;
}

DVector c2_rho(const SemisimpleGroup& g, const Weight& lambda) {
    if (lambda.size() != g.weight_dim())
        throw std::invalid_argument("weight has wrong length");
    if (!g.in_char_lattice(lambda))
        throw QDecError(QDecError::Kind::NotInCharLattice, "weight is not in the character lattice");
    const std::size_t m = g.m();
    std::vector<std::uint64_t> sizes(m);
    std::vector<Int> kappas(m);
    Int total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        auto part = factor_slice(g, lambda, i);
        auto os = rootdata::orbit_squares(g.factor(i), part);
        sizes[i] = os.size;
        kappas[i] = orbit_kappa(g.factor(i), os);
        total *= Int(static_cast<unsigned long>(os.size));
    }
    DVector d(m);
    for (std::size_t i = 0; i < m; ++i)
        d[i] = -halve_exact(total / Int(static_cast<unsigned long>(sizes[i])) * kappas[i]);
    return d;
}

DVector c2_rho_direct(const SemisimpleGroup& g, const Weight& lambda) {
    if (lambda.size() != g.weight_dim())
        throw std::invalid_argument("weight has wrong length");
    if (!g.in_char_lattice(lambda))
        throw QDecError(QDecError::Kind::NotInCharLattice, "weight is not in the character lattice");
    const std::size_t m = g.m();
    const std::size_t n = g.weight_dim();
    std::vector<std::vector<Weight>> orbits(m);
    for (std::size_t i = 0; i < m; ++i)
        orbits[i] = rootdata::weyl_orbit(g.factor(i), factor_slice(g, lambda, i));

    std::vector<Int> acc(n * n, 0);
    std::vector<std::size_t> idx(m, 0);
    Weight chi(n);
    for (;;) {
        for (std::size_t i = 0; i < m; ++i)
            std::copy(orbits[i][idx[i]].begin(), orbits[i][idx[i]].end(),
                      chi.begin() + static_cast<std::ptrdiff_t>(g.weight_offset(i)));
        for (std::size_t k = 0; k < n; ++k) {
            if (chi[k] == 0)
                continue;
            for (std::size_t l = k; l < n; ++l)
                acc[k * n + l] += Int(static_cast<long>(chi[k])) * static_cast<long>(chi[l]);
        }
        std::size_t k = 0;
        while (k < m && ++idx[k] == orbits[k].size())
            idx[k++] = 0;
        if (k == m)
            break;
    }
    QForm c2;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
            // sum chi^2 has coefficient acc for squares and 2*acc for mixed monomials.
            Int coef = k == l ? acc[k * n + l] : Int(2 * acc[k * n + l]);
            c2.add(k, l, -halve_exact(coef));
        }
    return killing_coordinates(g, c2);
}

// ---------------------------------------------------------------------------
// Dec(G)

Sublattice dec_closed(const SemisimpleGroup& g) {
    const std::size_t m = g.m();
    std::vector<IntVector> gens;
    switch (g.type()) {
    case DynkinType::B:
    case DynkinType::C: {
        const bool is_b = g.type() == DynkinType::B;
        f2::Space r = r_space(g);
        std::vector<bool> paired(m, false);  // rank class that admits q_i + q_j pairs
        for (std::size_t i = 0; i < m; ++i) {
            const int n = g.factor(i).rank;
            const bool in_r = has_unit(r, i);
            if (is_b) {
                if (in_r && n <= 2)
                    gens.push_back(unit_d(m, i, 1));
                else if (n >= 2)
                    gens.push_back(unit_d(m, i, 2));
                else {
                    gens.push_back(unit_d(m, i, 4));
                    paired[i] = true;
                }
            } else {
                if (in_r)
                    gens.push_back(unit_d(m, i, 1));
                else if (n % 2 == 0)
                    gens.push_back(unit_d(m, i, 2));
                else {
                    gens.push_back(unit_d(m, i, 4));
                    paired[i] = true;
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (paired[i] && paired[j] &&
                    r.contains(f2::unit(static_cast<unsigned>(i)) | f2::unit(static_cast<unsigned>(j))))
                    gens.push_back(pair_d(m, i, j, 2));
        break;
    }
    case DynkinType::D: {
        std::vector<bool> zero_odd(m, false);
        for (std::size_t i = 0; i < m; ++i) {
            const int n = g.factor(i).rank;
            auto part = g.r().factor_part(i);
            if (n % 2 == 1) {
                if (part.size() == 4 && n == 3)
                    gens.push_back(unit_d(m, i, 1));
                else if (part.size() > 1)
                    gens.push_back(unit_d(m, i, 2));
                else {
                    gens.push_back(unit_d(m, i, 8));
                    zero_odd[i] = true;
                }
            } else {
                const bool nonzero = part.size() > 1;
                const bool has_sum = std::find(part.begin(), part.end(), std::vector<int>{1, 1}) != part.end();
                if ((n == 4 && nonzero) || has_sum)
                    gens.push_back(unit_d(m, i, 2));
                else
                    gens.push_back(unit_d(m, i, 4));
            }
        }
        const auto& layout = g.layout();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!zero_odd[i] || !zero_odd[j])
                    continue;
                CenterElem e = layout.add(layout.scale(layout.unit(i), 2), layout.scale(layout.unit(j), 2));
                if (g.r().contains(e))
                    gens.push_back(pair_d(m, i, j, 4));
            }
        break;
    }
    }
    return Sublattice(m, gens);
}

Sublattice dec_oracle(const SemisimpleGroup& g, int height, const OracleLimits& limits) {
    if (height < 0)
        throw std::invalid_argument("oracle height must be nonnegative");
    const std::size_t m = g.m();
    if (height == 0)
        return Sublattice::zero(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& f = g.factor(i);
        if (rootdata::weyl_group_order(f) > limits.max_weyl_order)
            throw QDecError(QDecError::Kind::WorkBoundExceeded, "Weyl group of " + f.name() + " is too large");
        std::uint64_t count = 1;
        for (int k = 0; k < f.rank; ++k) {
            count *= static_cast<std::uint64_t>(height + 1);
            if (count > limits.max_dominant_weights)
                throw QDecError(QDecError::Kind::WorkBoundExceeded,
                                "too many dominant weights for " + f.name() + " at height " + std::to_string(height));
        }
    }

    // d_i = -1/2 kappa_i prod_{j != i} |O_j| is multilinear in the per-factor pairs
    // (kappa_j, |O_j|), so for each center image a Z-basis of the span of its pairs
    // generates the same lattice as the pairs themselves.
    struct Reduced {
        std::vector<int> center;
        std::vector<std::pair<Int, Int>> pairs;  // (kappa, size)
    };
    std::vector<std::vector<Reduced>> reduced(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::map<std::vector<int>, std::vector<IntVector>> by_center;
        for (const auto& c : orbit_classes(g.factor(i), height))
            by_center[c.center].push_back({c.kappa, Int(static_cast<unsigned long>(c.size))});
        for (auto& [center, rows] : by_center) {
            Reduced r{center, {}};
            for (const auto& b : Sublattice(2, rows).basis().row_list())
                r.pairs.emplace_back(b[0], b[1]);
            reduced[i].push_back(std::move(r));
        }
    }

    std::vector<IntVector> gens;
    std::vector<std::size_t> ci(m, 0);
    CenterElem center;
    for (;;) {
        center.clear();
        for (std::size_t i = 0; i < m; ++i)
            center.insert(center.end(), reduced[i][ci[i]].center.begin(), reduced[i][ci[i]].center.end());
        if (g.r().contains(center)) {
            std::vector<std::size_t> pi(m, 0);
            for (;;) {
                DVector d(m);
                for (std::size_t i = 0; i < m; ++i) {
                    Int x = reduced[i][ci[i]].pairs[pi[i]].first;
                    for (std::size_t j = 0; j < m; ++j)
                        if (j != i)
                            x *= reduced[j][ci[j]].pairs[pi[j]].second;
                    d[i] = -halve_exact(x);
                }
                gens.push_back(std::move(d));
                std::size_t k = 0;
                while (k < m && ++pi[k] == reduced[k][ci[k]].pairs.size())
                    pi[k++] = 0;
                if (k == m)
                    break;
            }
        }
        std::size_t k = 0;
        while (k < m && ++ci[k] == reduced[k].size())
            ci[k++] = 0;
        if (k == m)
            break;
    }
    return gens.empty() ? Sublattice::zero(m) : Sublattice(m, gens);
}

Sublattice reductive_lattice(const SemisimpleGroup& g) {
    intlat::CongruenceSystem sys;
    sys.m = g.m();
    for (std::size_t i = 0; i < g.m(); ++i) {
        const auto& f = g.factor(i);
        for (int j = 1; j <= f.rank; ++j) {
            int ord = g.weight_order(i, j);
            if (ord > 1)
                sys.add(unit_d(g.m(), i, rootdata::theta(f, j)), ord);
        }
    }
    return intlat::restrict_lattice(q_group(g), sys);
}

}  // namespace invcalc::qdec
