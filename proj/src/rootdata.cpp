#include "invcalc/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace invcalc::rootdata {

namespace {

Coord checked_add(Coord a, Coord b) {
    Coord r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("weight coordinate overflow");
    return r;
}

Coord checked_mul(Coord a, Coord b) {
    Coord r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("weight coordinate overflow");
    return r;
}

Coord dot(std::span<const Coord> a, std::span<const Coord> b) {
    Coord s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

void check_length(const SimpleFactor& f, std::span<const Coord> w) {
    if (w.size() != static_cast<std::size_t>(f.rank))
        throw std::invalid_argument("weight of length " + std::to_string(w.size()) + " for factor " + f.name());
}

struct WeightHash {
    std::size_t operator()(const Weight& w) const noexcept {
        std::size_t h = w.size();
        for (Coord c : w)
            h ^= std::hash<Coord>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

Coord mod(Coord a, int m) {
    Coord r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

char type_letter(DynkinType t) {
    switch (t) {
    case DynkinType::B:
        return 'B';
    case DynkinType::C:
        return 'C';
    case DynkinType::D:
        return 'D';
    }
    return '?';
}

DynkinType parse_type(char c) {
    switch (c) {
    case 'B':
        return DynkinType::B;
    case 'C':
        return DynkinType::C;
    case 'D':
        return DynkinType::D;
    default:
        throw std::invalid_argument(std::string("unknown Dynkin type '") + c + "'");
    }
}

void SimpleFactor::validate() const {
    if (type == DynkinType::D) {
        if (rank < 3)
            throw std::invalid_argument("rank must be ≥ 3 for type D");
    } else if (rank < 1) {
        throw std::invalid_argument(std::string("rank must be ≥ 1 for type ") + type_letter(type));
    }
}

std::string SimpleFactor::name() const { return type_letter(type) + std::to_string(rank); }

// ---------------------------------------------------------------------------
// QForm

const Int& QForm::coefficient(std::size_t k, std::size_t l) const {
    static const Int zero = 0;
    if (k > l)
        std::swap(k, l);
    auto it = terms_.find({k, l});
    return it == terms_.end() ? zero : it->second;
}

void QForm::add(std::size_t k, std::size_t l, const Int& c) {
    if (c == 0)
        return;
    if (k > l)
        std::swap(k, l);
    auto [it, inserted] = terms_.try_emplace({k, l}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

QForm QForm::scaled(const Int& k) const {
    QForm out;
    if (k == 0)
        return out;
    for (const auto& [key, c] : terms_)
        out.terms_.emplace(key, c * k);
    return out;
}

QForm& QForm::operator+=(const QForm& other) {
    for (const auto& [key, c] : other.terms_)
        add(key.first, key.second, c);
    return *this;
}

QForm QForm::substituted(const std::vector<std::vector<Int>>& images) const {
    auto image_of = [&](std::size_t k) {
        std::vector<std::pair<std::size_t, Int>> lin;
        if (k < images.size()) {
            for (std::size_t l = 0; l < images[k].size(); ++l)
                if (images[k][l] != 0)
                    lin.emplace_back(l, images[k][l]);
        } else {
            lin.emplace_back(k, Int(1));
        }
        return lin;
    };
    QForm out;
    for (const auto& [key, c] : terms_) {
        auto a = image_of(key.first);
        auto b = image_of(key.second);
        for (const auto& [i, ci] : a)
            for (const auto& [j, cj] : b)
                out.add(i, j, c * ci * cj);
    }
    return out;
}

std::string QForm::to_string(const std::string& symbol) const {
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [key, c] : terms_) {
        std::string mono = key.first == key.second
                               ? symbol + std::to_string(key.first + 1) + "^2"
                               : symbol + std::to_string(key.first + 1) + "*" + symbol + std::to_string(key.second + 1);
        if (s.empty())
            s += c == 1 ? "" : (c == -1 ? "-" : c.get_str() + "*");
        else if (c < 0)
            s += c == -1 ? " - " : " - " + Int(-c).get_str() + "*";
        else
            s += c == 1 ? " + " : " + " + c.get_str() + "*";
        s += mono;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Root data

IntMatrix cartan_matrix(const SimpleFactor& f) {
    f.validate();
    const int n = f.rank;
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        a(i, i) = 2;
    if (f.type == DynkinType::D) {
        for (int i = 0; i + 1 < n - 1; ++i) {
            a(i, i + 1) = -1;
            a(i + 1, i) = -1;
        }
        a(n - 3, n - 1) = -1;
        a(n - 1, n - 3) = -1;
        return a;
    }
    for (int i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = -1;
        a(i + 1, i) = -1;
    }
    if (n >= 2) {
        // B: alpha_n short, <alpha_{n-1}, alpha_n^vee> = -2; C is the transpose.
        if (f.type == DynkinType::B)
            a(n - 1, n - 2) = -2;
        else
            a(n - 2, n - 1) = -2;
    }
    return a;
}

std::vector<Weight> simple_roots(const SimpleFactor& f) {
    const int n = f.rank;
    std::vector<Weight> roots(n, Weight(n, 0));
    if (f.type == DynkinType::C) {
        for (int j = 0; j + 1 < n; ++j) {
            roots[j][j] = 1;
            roots[j][j + 1] = -1;
        }
        roots[n - 1][n - 1] = 2;
        return roots;
    }
    IntMatrix a = cartan_matrix(f);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            roots[j][i] = a(i, j).get_si();
    return roots;
}

std::vector<Weight> simple_coroots(const SimpleFactor& f) {
    f.validate();
    const int n = f.rank;
    std::vector<Weight> coroots(n, Weight(n, 0));
    if (f.type == DynkinType::C) {
        for (int j = 0; j + 1 < n; ++j) {
            coroots[j][j] = 1;
            coroots[j][j + 1] = -1;
        }
        coroots[n - 1][n - 1] = 1;
        return coroots;
    }
    for (int j = 0; j < n; ++j)
        coroots[j][j] = 1;
    return coroots;
}

Weight fundamental_weight(const SimpleFactor& f, int j) {
    f.validate();
    if (j < 1 || j > f.rank)
        throw std::out_of_range("node index " + std::to_string(j) + " out of range for " + f.name());
    Weight w(f.rank, 0);
    if (f.type == DynkinType::C)
        std::fill(w.begin(), w.begin() + j, 1);
    else
        w[j - 1] = 1;
    return w;
}

Weight from_fundamental(const SimpleFactor& f, std::span<const Coord> coefficients) {
    check_length(f, coefficients);
    if (f.type != DynkinType::C)
        return Weight(coefficients.begin(), coefficients.end());
    Weight w(f.rank, 0);
    Coord acc = 0;
    for (int k = f.rank - 1; k >= 0; --k) {
        acc = checked_add(acc, coefficients[k]);
        w[k] = acc;
    }
    return w;
}

Weight to_fundamental(const SimpleFactor& f, std::span<const Coord> w) {
    check_length(f, w);
    auto coroots = simple_coroots(f);
    Weight a(f.rank);
    for (int j = 0; j < f.rank; ++j)
        a[j] = dot(coroots[j], w);
    return a;
}

namespace {

// Cached root/coroot tables so orbit enumeration does not rebuild them per step.
struct Reflections {
    std::vector<Weight> roots;
    std::vector<Weight> coroots;

    explicit Reflections(const SimpleFactor& f) : roots(simple_roots(f)), coroots(simple_coroots(f)) {}

    Coord pairing(std::size_t j, const Weight& w) const { return dot(coroots[j], w); }

    Weight apply(std::size_t j, const Weight& w) const {
        Coord p = pairing(j, w);
        Weight out = w;
        if (p != 0)
            for (std::size_t i = 0; i < w.size(); ++i)
                out[i] = checked_add(out[i], -checked_mul(p, roots[j][i]));
        return out;
    }
};

Weight dominant_rep(const Reflections& refl, Weight w) {
    for (;;) {
        bool moved = false;
        for (std::size_t j = 0; j < refl.roots.size(); ++j)
            if (refl.pairing(j, w) < 0) {
                w = refl.apply(j, w);
                moved = true;
            }
        if (!moved)
            return w;
    }
}

// Visits every element of the orbit exactly once.
template <typename Visit>
void for_each_in_orbit(const SimpleFactor& f, std::span<const Coord> w, Visit&& visit) {
    check_length(f, w);
    Reflections refl(f);
    Weight top = dominant_rep(refl, Weight(w.begin(), w.end()));
    std::unordered_set<Weight, WeightHash> seen{top};
    std::deque<Weight> queue{top};
    while (!queue.empty()) {
        Weight mu = std::move(queue.front());
        queue.pop_front();
        for (std::size_t j = 0; j < refl.roots.size(); ++j) {
            if (refl.pairing(j, mu) <= 0)
                continue;
            Weight nu = refl.apply(j, mu);
            if (seen.insert(nu).second)
                queue.push_back(std::move(nu));
        }
        visit(mu);
    }
}

}  // namespace

Weight reflect(const SimpleFactor& f, int j, std::span<const Coord> w) {
    check_length(f, w);
    if (j < 1 || j > f.rank)
        throw std::out_of_range("node index out of range");
    return Reflections(f).apply(static_cast<std::size_t>(j - 1), Weight(w.begin(), w.end()));
}

bool is_dominant(const SimpleFactor& f, std::span<const Coord> w) {
    auto a = to_fundamental(f, w);
    return std::all_of(a.begin(), a.end(), [](Coord c) { return c >= 0; });
}

Weight dominant_representative(const SimpleFactor& f, std::span<const Coord> w) {
    check_length(f, w);
    return dominant_rep(Reflections(f), Weight(w.begin(), w.end()));
}

QForm killing_form(const SimpleFactor& f, std::size_t offset) {
    f.validate();
    const std::size_t n = static_cast<std::size_t>(f.rank);
    QForm q;
    auto at = [offset](std::size_t j) { return offset + j - 1; };  // 1-based node -> global index
    switch (f.type) {
    case DynkinType::B:
        if (n == 1) {
            q.add(at(1), at(1), 1);
            break;
        }
        for (std::size_t j = 1; j <= n - 1; ++j)
            q.add(at(j), at(j), 1);
        for (std::size_t j = 1; j + 2 <= n; ++j)
            q.add(at(j), at(j + 1), -1);
        q.add(at(n), at(n), 2);
        q.add(at(n - 1), at(n), -2);
        break;
    case DynkinType::C:
        for (std::size_t j = 1; j <= n; ++j)
            q.add(at(j), at(j), 1);
        break;
    case DynkinType::D:
        for (std::size_t j = 1; j <= n; ++j)
            q.add(at(j), at(j), 1);
        for (std::size_t j = 1; j + 2 <= n; ++j)
            q.add(at(j), at(j + 1), -1);
        q.add(at(n - 2), at(n), -1);
        break;
    }
    return q;
}

std::vector<int> center_group(const SimpleFactor& f) {
    f.validate();
    if (f.type != DynkinType::D)
        return {2};
    return f.rank % 2 == 1 ? std::vector<int>{4} : std::vector<int>{2, 2};
}

std::vector<Weight> center_map_rows(const SimpleFactor& f) {
    f.validate();
    const int n = f.rank;
    switch (f.type) {
    case DynkinType::B: {
        Weight r(n, 0);
        r[n - 1] = 1;
        return {r};
    }
    case DynkinType::C:
        return {Weight(n, 1)};
    case DynkinType::D: {
        // S = a_1 + a_3 + ... + a_{2k-1}, k = floor((n-1)/2)
        Weight s(n, 0);
        for (int j = 1; j <= (n - 1) / 2; ++j)
            s[2 * j - 2] = 1;
        if (n % 2 == 1) {
            Weight r(n, 0);
            for (int i = 0; i < n; ++i)
                r[i] = 2 * s[i];
            r[n - 2] += 1;
            r[n - 1] -= 1;
            return {r};
        }
        Weight r1 = s, r2 = s;
        r1[n - 2] += 1;
        r2[n - 1] += 1;
        return {r1, r2};
    }
    }
    return {};
}

std::vector<int> weight_center_image(const SimpleFactor& f, std::span<const Coord> w) {
    check_length(f, w);
    auto rows = center_map_rows(f);
    auto moduli = center_group(f);
    std::vector<int> out;
    for (std::size_t c = 0; c < rows.size(); ++c)
        out.push_back(static_cast<int>(mod(dot(rows[c], w), moduli[c])));
    return out;
}

std::vector<Weight> weyl_orbit(const SimpleFactor& f, std::span<const Coord> w) {
    std::vector<Weight> orbit;
    for_each_in_orbit(f, w, [&](const Weight& mu) { orbit.push_back(mu); });
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

OrbitSquares orbit_squares(const SimpleFactor& f, std::span<const Coord> w) {
    const std::size_t n = static_cast<std::size_t>(f.rank);
    std::vector<Coord> acc(n * n, 0);
    std::uint64_t size = 0;
    for_each_in_orbit(f, w, [&](const Weight& mu) {
        ++size;
        for (std::size_t k = 0; k < n; ++k) {
            if (mu[k] == 0)
                continue;
            for (std::size_t l = k; l < n; ++l)
                acc[k * n + l] = checked_add(acc[k * n + l], checked_mul(mu[k], mu[l]));
        }
    });
    OrbitSquares out;
    out.size = size;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
            Int c = static_cast<long>(acc[k * n + l]);
            out.sum_of_squares.add(k, l, k == l ? c : Int(2 * c));
        }
    return out;
}

std::uint64_t weyl_group_order(const SimpleFactor& f) {
    f.validate();
    std::uint64_t order = 1;
    for (int k = 2; k <= f.rank; ++k)
        order *= static_cast<std::uint64_t>(k);
    int twos = f.type == DynkinType::D ? f.rank - 1 : f.rank;
    return order << twos;
}

int theta(const SimpleFactor& f, int j) {
    f.validate();
    if (j < 1 || j > f.rank)
        throw std::out_of_range("node index out of range");
    switch (f.type) {
    case DynkinType::B:
        return (j == f.rank && f.rank >= 2) ? 2 : 1;
    case DynkinType::C:
        return j == f.rank ? 1 : 2;
    case DynkinType::D:
        return 1;
    }
    return 1;
}

}  // namespace invcalc::rootdata
