#include "invcalc/groupspec.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

namespace invcalc::groupspec {

namespace {

int mod(long a, int m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

// ---------------------------------------------------------------------------
// CenterLayout

CenterLayout::CenterLayout(const std::vector<SimpleFactor>& factors) {
    for (const auto& f : factors) {
        offset_.push_back(moduli_.size());
        auto comps = rootdata::center_group(f);
        width_.push_back(comps.size());
        for (int q : comps) {
            moduli_.push_back(q);
            if (order_ > std::numeric_limits<std::uint64_t>::max() / q)
                order_ = std::numeric_limits<std::uint64_t>::max();
            else
                order_ *= static_cast<std::uint64_t>(q);
        }
    }
}

CenterElem CenterLayout::add(const CenterElem& a, const CenterElem& b) const {
    CenterElem out(components());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = (a[k] + b[k]) % moduli_[k];
    return out;
}

CenterElem CenterLayout::scale(const CenterElem& a, long k) const {
    CenterElem out(components());
    for (std::size_t c = 0; c < out.size(); ++c)
        out[c] = mod(static_cast<long>(a[c]) * k, moduli_[c]);
    return out;
}

bool CenterLayout::well_formed(const CenterElem& e) const {
    if (e.size() != components())
        return false;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] < 0 || e[k] >= moduli_[k])
            return false;
    return true;
}

CenterElem CenterLayout::unit(std::size_t i, std::size_t k) const {
    if (k >= width(i))
        throw std::out_of_range("center component out of range");
    CenterElem e = zero();
    e[offset(i) + k] = 1;
    return e;
}

bool CenterLayout::supported_on(const CenterElem& e, std::size_t i) const {
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] != 0 && (k < offset(i) || k >= offset(i) + width(i)))
            return false;
    return true;
}

int CenterLayout::element_order(const CenterElem& e) const {
    int ord = 1;
    for (std::size_t k = 0; k < e.size(); ++k)
        ord = std::lcm(ord, moduli_[k] / std::gcd(moduli_[k], e[k]));
    return ord;
}

std::uint64_t CenterLayout::encode(const CenterElem& e) const {
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
        code = code * static_cast<std::uint64_t>(moduli_[k]) + static_cast<std::uint64_t>(e[k]);
    return code;
}

CenterElem CenterLayout::decode(std::uint64_t code) const {
    CenterElem e(components());
    for (std::size_t k = e.size(); k-- > 0;) {
        e[k] = static_cast<int>(code % static_cast<std::uint64_t>(moduli_[k]));
        code /= static_cast<std::uint64_t>(moduli_[k]);
    }
    return e;
}

// ---------------------------------------------------------------------------
// RSubgroup

RSubgroup::RSubgroup(const CenterLayout& layout, const std::vector<CenterElem>& generators)
    : layout_(layout), generators_(generators) {
    for (const auto& g : generators_)
        if (!layout_.well_formed(g))
            throw SpecError(SpecError::Kind::MalformedGenerator, "mu_relations", "malformed center element");
    std::deque<CenterElem> queue{layout_.zero()};
    codes_.insert(layout_.encode(queue.front()));
    while (!queue.empty()) {
        CenterElem x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators_) {
            CenterElem y = layout_.add(x, g);
            if (codes_.insert(layout_.encode(y)).second)
                queue.push_back(std::move(y));
        }
        elements_.push_back(std::move(x));
    }
    std::sort(elements_.begin(), elements_.end());
}

bool RSubgroup::contains(const CenterElem& e) const {
    return layout_.well_formed(e) && codes_.count(layout_.encode(e)) > 0;
}

bool RSubgroup::contains(const RSubgroup& other) const {
    return std::all_of(other.elements_.begin(), other.elements_.end(),
                       [this](const CenterElem& e) { return contains(e); });
}

std::vector<std::vector<int>> RSubgroup::factor_part(std::size_t i) const {
    std::vector<std::vector<int>> out;
    const auto off = static_cast<std::ptrdiff_t>(layout_.offset(i));
    const auto w = static_cast<std::ptrdiff_t>(layout_.width(i));
    for (const auto& e : elements_)
        if (layout_.supported_on(e, i))
            out.emplace_back(e.begin() + off, e.begin() + off + w);
    return out;
}

std::vector<CenterElem> RSubgroup::canonical_generators() const {
    std::vector<CenterElem> gens;
    RSubgroup span(layout_, {});
    for (const auto& e : elements_) {
        if (span.contains(e))
            continue;
        gens.push_back(e);
        span = RSubgroup(layout_, gens);
    }
    return gens;
}

// ---------------------------------------------------------------------------
// SemisimpleGroup

RSubgroup validate_and_close(const GroupSpec& spec) {
    if (spec.factors.empty())
        throw SpecError(SpecError::Kind::NoFactors, "factors", "at least one factor is required");
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& f = spec.factors[i];
        try {
            f.validate();
        } catch (const std::invalid_argument& e) {
            throw SpecError(SpecError::Kind::InvalidFactor, "factors[" + std::to_string(i) + "].rank", e.what());
        }
        if (f.type != spec.factors.front().type)
            throw SpecError(SpecError::Kind::MixedTypes, "factors[" + std::to_string(i) + "].type",
                            "all factors must have the same type");
    }
    CenterLayout layout(spec.factors);
    for (std::size_t k = 0; k < spec.r_generators.size(); ++k)
        if (!layout.well_formed(spec.r_generators[k]))
            throw SpecError(SpecError::Kind::MalformedGenerator, "mu_relations[" + std::to_string(k) + "]",
                            "relation does not match the center of the given factors");
    return RSubgroup(layout, spec.r_generators);
}

SemisimpleGroup::SemisimpleGroup(GroupSpec spec) : spec_(std::move(spec)) {
    r_ = validate_and_close(spec_);
    layout_ = r_.layout();
    for (const auto& f : spec_.factors) {
        offsets_.push_back(dim_);
        dim_ += static_cast<std::size_t>(f.rank);
    }

    // Z/R as the cokernel of K = [diag(moduli); generators of R].
    const std::size_t c = layout_.components();
    std::vector<IntVector> krows;
    for (std::size_t k = 0; k < c; ++k) {
        IntVector row(c, 0);
        row[k] = layout_.moduli()[k];
        krows.push_back(std::move(row));
    }
    for (const auto& g : r_.canonical_generators())
        krows.emplace_back(g.begin(), g.end());
    auto res = intlat::snf(intlat::IntMatrix::from_rows(krows, c));
    auto diag = res.diagonal();

    // Center map M: one row per Z component, one column per global weight coordinate.
    std::vector<IntVector> mrows(c, IntVector(dim_, 0));
    for (std::size_t i = 0; i < m(); ++i) {
        auto rows = rootdata::center_map_rows(factor(i));
        for (std::size_t k = 0; k < rows.size(); ++k)
            for (std::size_t a = 0; a < rows[k].size(); ++a)
                mrows[layout_.offset(i) + k][offsets_[i] + a] = static_cast<long>(rows[k][a]);
    }

    intlat::CongruenceSystem sys;
    sys.m = dim_;
    for (std::size_t j = 0; j < c; ++j) {
        if (diag[j] == 1)
            continue;
        std::vector<Int> chi(c);
        for (std::size_t k = 0; k < c; ++k)
            chi[k] = res.v(k, j);
        IntVector row(dim_, 0);
        for (std::size_t k = 0; k < c; ++k)
            for (std::size_t a = 0; a < dim_; ++a)
                row[a] += chi[k] * mrows[k][a];
        sys.add(std::move(row), diag[j]);
        quotient_factors_.push_back(static_cast<int>(diag[j].get_si()));
        characters_.push_back(std::move(chi));
    }
    t_star_ = intlat::solve_congruences(sys);
}

CenterElem SemisimpleGroup::center_image(const Weight& w) const {
    if (w.size() != dim_)
        throw std::invalid_argument("weight has wrong length");
    CenterElem out;
    for (std::size_t i = 0; i < m(); ++i) {
        auto off = static_cast<std::ptrdiff_t>(offsets_[i]);
        std::span<const Coord> part(w.data() + off, static_cast<std::size_t>(factor(i).rank));
        auto img = rootdata::weight_center_image(factor(i), part);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

int SemisimpleGroup::weight_order(std::size_t i, int j) const {
    Weight w(dim_, 0);
    auto fw = rootdata::fundamental_weight(factor(i), j);
    std::copy(fw.begin(), fw.end(), w.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
    CenterElem x = center_image(w);
    int ord = 1;
    for (std::size_t q = 0; q < characters_.size(); ++q) {
        Int v = 0;
        for (std::size_t k = 0; k < x.size(); ++k)
            v += characters_[q][k] * x[k];
        const Int f = quotient_factors_[q];
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), f.get_mpz_t());
        Int g = gcd(r, f);
        ord = std::lcm(ord, static_cast<int>(Int(f / g).get_si()));
    }
    return ord;
}

Sublattice char_lattice(const SemisimpleGroup& g) { return g.char_lattice(); }

int weight_order(const SemisimpleGroup& g, std::size_t i, int j) { return g.weight_order(i, j); }

// ---------------------------------------------------------------------------
// Enumeration

std::vector<RSubgroup> enumerate_subgroups(const std::vector<SimpleFactor>& factors) {
    for (const auto& f : factors)
        f.validate();
    CenterLayout layout(factors);
    if (layout.order() > (std::uint64_t{1} << 20))
        throw SpecError(SpecError::Kind::CenterTooLarge, "factors",
                        "center of order " + std::to_string(layout.order()) + " exceeds 2^20");
    const std::uint64_t n = layout.order();

    // Subgroups as sorted code lists; grow each known subgroup by one more element.
    using Codes = std::vector<std::uint64_t>;
    std::set<Codes> seen;
    std::deque<Codes> queue;
    Codes trivial{0};
    seen.insert(trivial);
    queue.push_back(trivial);
    while (!queue.empty()) {
        Codes s = std::move(queue.front());
        queue.pop_front();
        std::vector<bool> in(n, false);
        for (auto c : s)
            in[c] = true;
        std::vector<bool> tried(n, false);
        for (std::uint64_t g = 0; g < n; ++g) {
            if (in[g] || tried[g])
                continue;
            // <S, g> = union of cosets S + t*g.
            CenterElem ge = layout.decode(g);
            std::vector<CenterElem> members;
            for (auto c : s)
                members.push_back(layout.decode(c));
            std::vector<bool> in2 = in;
            CenterElem step = ge;
            while (!in[layout.encode(step)]) {
                for (const auto& x : members) {
                    auto code = layout.encode(layout.add(x, step));
                    in2[code] = true;
                }
                step = layout.add(step, ge);
            }
            // Every element of the coset S + g generates the same extension.
            for (const auto& x : members)
                tried[layout.encode(layout.add(x, ge))] = true;
            Codes t;
            for (std::uint64_t c = 0; c < n; ++c)
                if (in2[c])
                    t.push_back(c);
            if (seen.insert(t).second)
                queue.push_back(std::move(t));
        }
    }

    std::vector<RSubgroup> out;
    out.reserve(seen.size());
    for (const auto& codes : seen) {
        std::vector<CenterElem> elems;
        for (auto c : codes)
            elems.push_back(layout.decode(c));
        RSubgroup full(layout, elems);
        out.emplace_back(layout, full.canonical_generators());
    }
    std::sort(out.begin(), out.end(), [](const RSubgroup& a, const RSubgroup& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.elements() < b.elements();
    });
    return out;
}

std::string center_elem_to_string(const CenterLayout& layout, const CenterElem& e) {
    std::string s;
    for (std::size_t i = 0; i < layout.factors(); ++i) {
        for (std::size_t k = 0; k < layout.width(i); ++k) {
            int v = e.at(layout.offset(i) + k);
            if (v == 0)
                continue;
            if (!s.empty())
                s += "+";
            if (v != 1)
                s += std::to_string(v);
            s += "e" + std::to_string(i + 1);
            if (layout.width(i) == 2)
                s += "," + std::to_string(k + 1);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace invcalc::groupspec
