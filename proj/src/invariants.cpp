#include "invcalc/invariants.hpp"

#include <algorithm>
#include <bit>

#include "invcalc/qdec.hpp"

namespace invcalc::invariants {

using groupspec::CenterElem;
using rootdata::DynkinType;

namespace {

f2::Vec bit(std::size_t i) { return f2::unit(static_cast<unsigned>(i)); }

// R as a subspace of F_2^m (types B and C).
f2::Space r_space(const SemisimpleGroup& g) {
    if (g.m() > 64)
        throw std::invalid_argument("at most 64 factors are supported");
    f2::Space s;
    for (const auto& e : g.r().elements()) {
        f2::Vec v = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                v |= bit(i);
        s.insert(v);
    }
    return s;
}

bool mask_less(f2::Vec a, f2::Vec b) {
    if (std::popcount(a) != std::popcount(b))
        return std::popcount(a) < std::popcount(b);
    f2::Vec d = a ^ b;
    if (d == 0)
        return false;
    return (a & (d & -d)) != 0;  // the set containing the lowest differing index comes first
}

std::string mask_to_string(f2::Vec v) {
    std::string s;
    for (unsigned i = 0; i < 64; ++i)
        if (v & f2::unit(i))
            s += (s.empty() ? "e" : "+e") + std::to_string(i + 1);
    return s.empty() ? "0" : s;
}

// Type D: the element sum r_i of Z attached to r-bar.
CenterElem lift_bar(const SemisimpleGroup& g, f2::Vec v) {
    const auto& layout = g.layout();
    CenterElem e = layout.zero();
    for (std::size_t i = 0; i < g.m(); ++i) {
        if (!(v & bit(i)))
            continue;
        if (g.factor(i).rank % 2 == 1)
            e[layout.offset(i)] = 2;
        else
            e[layout.offset(i)] = e[layout.offset(i) + 1] = 1;
    }
    return e;
}

struct DFactorInfo {
    bool odd;
    std::size_t part_size;  // |R ∩ Z_i|
    bool has_sum;           // even: e_{i,1} + e_{i,2} in R
    bool has_single;        // even: R ∩ Z_i = <e_{i,1}> or <e_{i,2}>
};

DFactorInfo d_info(const SemisimpleGroup& g, std::size_t i) {
    auto part = g.r().factor_part(i);
    DFactorInfo info{};
    info.odd = g.factor(i).rank % 2 == 1;
    info.part_size = part.size();
    if (!info.odd) {
        info.has_sum = std::find(part.begin(), part.end(), std::vector<int>{1, 1}) != part.end();
        info.has_single = part.size() == 2 && !info.has_sum;
    }
    return info;
}

}  // namespace

RankData rank_data(const SemisimpleGroup& g) {
    RankData d;
    d.m = g.m();
    const std::size_t m = g.m();
    switch (g.type()) {
    case DynkinType::B: {
        f2::Space r = r_space(g);
        d.dim_r = r.dim();
        d.k = m - d.dim_r;
        d.l = d.dim_r;
        f2::Space s1, s2;
        for (std::size_t i = 0; i < m; ++i)
            if (r.contains(bit(i)) && g.factor(i).rank <= 2)
                s1.insert(bit(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (g.factor(i).rank == 1 && g.factor(j).rank == 1 && !r.contains(bit(i)) && !r.contains(bit(j)) &&
                    r.contains(bit(i) | bit(j)))
                    s2.insert(bit(i) | bit(j));
        d.l1 = s1.dim();
        d.l2 = s2.dim();
        break;
    }
    case DynkinType::C: {
        f2::Space r = r_space(g);
        d.dim_r = r.dim();
        d.k = m - d.dim_r;
        f2::Vec not4 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (g.factor(i).rank % 4 == 0)
                ++d.s;
            else
                not4 |= bit(i);
        }
        f2::Space restricted;
        for (f2::Vec v : r.elements())
            if ((v & ~not4) == 0)
                restricted.insert(v);
        d.l = restricted.dim();
        f2::Space s1, s2;
        for (std::size_t i = 0; i < m; ++i)
            if (r.contains(bit(i)))
                s1.insert(bit(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (g.factor(i).rank % 2 == 1 && g.factor(j).rank % 2 == 1 && !r.contains(bit(i)) &&
                    !r.contains(bit(j)) && r.contains(bit(i) | bit(j)))
                    s2.insert(bit(i) | bit(j));
        d.l1 = s1.dim();
        d.l2 = s2.dim();
        break;
    }
    case DynkinType::D: {
        if (m > 64)
            throw std::invalid_argument("at most 64 factors are supported");
        std::vector<DFactorInfo> info;
        for (std::size_t i = 0; i < m; ++i)
            info.push_back(d_info(g, i));
        auto full = [&](std::size_t i) { return info[i].part_size == 4; };

        // R-bar: elements of R lying in the image of r-bar -> sum r_i.
        for (const auto& e : g.r().elements()) {
            f2::Vec v = 0;
            bool in_image = true;
            for (std::size_t i = 0; i < m && in_image; ++i) {
                const std::size_t off = g.layout().offset(i);
                if (info[i].odd) {
                    if (e[off] == 2)
                        v |= bit(i);
                    else if (e[off] != 0)
                        in_image = false;
                } else {
                    if (e[off] == 1 && e[off + 1] == 1)
                        v |= bit(i);
                    else if (e[off] != e[off + 1])
                        in_image = false;
                }
            }
            if (in_image)
                d.r_bar.insert(v);
        }
        f2::Vec support = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (g.factor(i).rank % 4 != 0 && !full(i))
                support |= bit(i);
        for (f2::Vec v : d.r_bar.elements())
            if ((v & ~support) == 0)
                d.r_prime.insert(v);
        d.l = d.r_prime.dim();

        for (std::size_t i = 0; i < m; ++i) {
            const int n = g.factor(i).rank;
            if (full(i) && n != 3)
                d.i1.push_back(i);
            if (n % 4 == 0 && (info[i].part_size == 1 || (info[i].has_single && n >= 6)))
                d.i2.push_back(i);
            if (n % 4 != 0 && ((info[i].odd && info[i].part_size == 2) ||
                               (!info[i].odd && info[i].has_sum && info[i].part_size == 2)))
                ++d.l1;
        }
        d.s1 = d.i1.size();
        d.s2 = d.i2.size();

        f2::Space pairs;
        const auto& layout = g.layout();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!info[i].odd || !info[j].odd || info[i].part_size != 1 || info[j].part_size != 1)
                    continue;
                CenterElem e = layout.add(layout.scale(layout.unit(i), 2), layout.scale(layout.unit(j), 2));
                if (g.r().contains(e))
                    pairs.insert(bit(i) | bit(j));
            }
        d.l2 = pairs.dim();
        break;
    }
    }
    return d;
}

FiniteAbelianGroup inv_ind(const SemisimpleGroup& g) {
    return intlat::lattice_quotient(qdec::q_group(g), qdec::dec_closed(g));
}

FiniteAbelianGroup inv_red(const SemisimpleGroup& g) {
    return intlat::lattice_quotient(qdec::reductive_lattice(g), qdec::dec_closed(g));
}

int inv_red_rank_theorem(const SemisimpleGroup& g) {
    RankData d = rank_data(g);
    long r = 0;
    switch (g.type()) {
    case DynkinType::B:
        r = static_cast<long>(d.m - d.k) - static_cast<long>(d.l1 + d.l2);
        break;
    case DynkinType::C:
        r = static_cast<long>(d.s + d.l) - static_cast<long>(d.l1 + d.l2);
        break;
    case DynkinType::D:
        r = static_cast<long>(d.s1 + d.s2 + d.l) - static_cast<long>(d.l1 + d.l2);
        break;
    }
    return static_cast<int>(r);
}

std::optional<int> inv_ind_rank_corollary(const SemisimpleGroup& g) {
    switch (g.type()) {
    case DynkinType::B: {
        for (std::size_t i = 0; i < g.m(); ++i)
            if (g.factor(i).rank < 2)
                return std::nullopt;
        f2::Space r = r_space(g);
        std::size_t rank2 = 0;
        for (std::size_t i = 0; i < g.m(); ++i)
            if (g.factor(i).rank == 2 && r.contains(bit(i)))
                ++rank2;
        return static_cast<int>(r.dim()) - static_cast<int>(rank2);
    }
    case DynkinType::C: {
        for (std::size_t i = 0; i < g.m(); ++i)
            if (g.factor(i).rank % 2 != 0)
                return std::nullopt;
        RankData d = rank_data(g);
        return static_cast<int>(d.s + d.l) - static_cast<int>(d.l1);
    }
    case DynkinType::D:
        return std::nullopt;
    }
    return std::nullopt;
}

GeneratorReport generator_report(const SemisimpleGroup& g) {
    const std::size_t m = g.m();
    f2::Space kernel;
    std::vector<GeneratorEntry> singles;
    std::vector<f2::Vec> phi_part;

    auto phi_label = [&](f2::Vec v) {
        if (g.type() == DynkinType::D)
            return "e3_phi(" + groupspec::center_elem_to_string(g.layout(), lift_bar(g, v)) + ")";
        return "e3_phi(" + mask_to_string(v) + ")";
    };

    switch (g.type()) {
    case DynkinType::B: {
        f2::Space r = r_space(g);
        phi_part = r.elements();
        for (std::size_t i = 0; i < m; ++i)
            if (r.contains(bit(i)) && g.factor(i).rank <= 2)
                kernel.insert(bit(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (g.factor(i).rank == 1 && g.factor(j).rank == 1 && !r.contains(bit(i)) && !r.contains(bit(j)) &&
                    r.contains(bit(i) | bit(j)))
                    kernel.insert(bit(i) | bit(j));
        break;
    }
    case DynkinType::C: {
        f2::Space r = r_space(g);
        f2::Vec not4 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (g.factor(i).rank % 4 == 0)
                singles.push_back({GeneratorEntry::Kind::Delta, bit(i), i, "Delta(" + std::to_string(i + 1) + ")"});
            else
                not4 |= bit(i);
        }
        for (f2::Vec v : r.elements())
            if ((v & ~not4) == 0)
                phi_part.push_back(v);
        for (std::size_t i = 0; i < m; ++i)
            if (r.contains(bit(i)))
                kernel.insert(bit(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (g.factor(i).rank % 2 == 1 && g.factor(j).rank % 2 == 1 && !r.contains(bit(i)) &&
                    !r.contains(bit(j)) && r.contains(bit(i) | bit(j)))
                    kernel.insert(bit(i) | bit(j));
        break;
    }
    case DynkinType::D: {
        RankData d = rank_data(g);
        for (std::size_t i = 0; i < m; ++i) {
            if (std::find(d.i1.begin(), d.i1.end(), i) != d.i1.end())
                singles.push_back({GeneratorEntry::Kind::E3, bit(i), i, "e3(" + std::to_string(i + 1) + ")"});
            else if (std::find(d.i2.begin(), d.i2.end(), i) != d.i2.end())
                singles.push_back(
                    {GeneratorEntry::Kind::DeltaPrime, bit(i), i, "DeltaPrime(" + std::to_string(i + 1) + ")"});
        }
        phi_part = d.r_prime.elements();
        for (std::size_t i = 0; i < m; ++i)
            if (d.r_prime.contains(bit(i)))
                kernel.insert(bit(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (g.factor(i).rank % 2 == 1 && g.factor(j).rank % 2 == 1 && !d.r_prime.contains(bit(i)) &&
                    !d.r_prime.contains(bit(j)) && d.r_prime.contains(bit(i) | bit(j)))
                    kernel.insert(bit(i) | bit(j));
        break;
    }
    }

    GeneratorReport report;
    for (f2::Vec v : kernel.basis())
        report.kernel.push_back(g.type() == DynkinType::D
                                    ? groupspec::center_elem_to_string(g.layout(), lift_bar(g, v))
                                    : mask_to_string(v));
    std::sort(report.kernel.begin(), report.kernel.end());

    // Complement of the kernel: singled-out factors first, then phi-classes by size.
    f2::Space span = kernel;
    for (auto& e : singles)
        if (span.insert(e.r)) {
            e.r = 0;
            report.entries.push_back(std::move(e));
        }
    std::sort(phi_part.begin(), phi_part.end(), mask_less);
    for (f2::Vec v : phi_part)
        if (v != 0 && span.insert(v))
            report.entries.push_back({GeneratorEntry::Kind::E3Phi, v, 0, phi_label(v)});
    return report;
}

std::string unramified_status(const SemisimpleGroup&) {
    return "Inv3_nr(G) = 0 (algebraically closed base field of characteristic 0)";
}

Analysis analyze(const SemisimpleGroup& g) {
    Analysis a;
    a.char_lattice = g.char_lattice();
    a.q = qdec::q_group(g);
    a.dec = qdec::dec_closed(g);
    a.reductive = qdec::reductive_lattice(g);
    a.ind = intlat::lattice_quotient(a.q, a.dec);
    a.red = intlat::lattice_quotient(a.reductive, a.dec);
    a.theorem_rank = inv_red_rank_theorem(g);
    a.corollary_rank = inv_ind_rank_corollary(g);
    a.generators = generator_report(g);
    return a;
}

}  // namespace invcalc::invariants
