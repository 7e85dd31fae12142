#include "invcalc/report.hpp"

#include <fstream>
#include <sstream>

#include "invcalc/qdec.hpp"

namespace invcalc::report {

using groupspec::CenterElem;
using rootdata::DynkinType;
using rootdata::SimpleFactor;

namespace {

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

long small_int(const nlohmann::json& v, const std::string& field, long lo, long hi) {
    if (!v.is_number_integer())
        throw InputError(field, "expected an integer");
    long x = v.get<long>();
    if (x < lo || x > hi)
        throw InputError(field, "must be between " + std::to_string(lo) + " and " + std::to_string(hi));
    return x;
}

json int_json(const intlat::Int& x) {
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Input

GroupSpec parse_spec(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw InputError("", "document must be a JSON object");
    if (!doc.contains("factors"))
        throw InputError("factors", "missing");
    const auto& jf = doc["factors"];
    if (!jf.is_array() || jf.empty())
        throw InputError("factors", "must be a non-empty array");

    GroupSpec spec;
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const auto& f = jf[i];
        const std::string base = at("factors", i);
        if (!f.is_object())
            throw InputError(base, "must be an object with \"type\" and \"rank\"");
        if (!f.contains("type") || !f["type"].is_string())
            throw InputError(base + ".type", "must be one of \"B\", \"C\", \"D\"");
        const auto t = f["type"].get<std::string>();
        if (t != "B" && t != "C" && t != "D")
            throw InputError(base + ".type", "must be one of \"B\", \"C\", \"D\"");
        if (!f.contains("rank") || !f["rank"].is_number_integer())
            throw InputError(base + ".rank", "must be an integer");
        SimpleFactor sf{rootdata::parse_type(t[0]), 0};
        const long rank = f["rank"].get<long>();
        const long min_rank = sf.type == DynkinType::D ? 3 : 1;
        if (rank < min_rank)
            throw InputError(base + ".rank", "rank must be ≥ " + std::to_string(min_rank) + " for type " + t);
        if (rank > 64)
            throw InputError(base + ".rank", "rank must be ≤ 64");
        sf.rank = static_cast<int>(rank);
        if (!spec.factors.empty() && spec.factors.front().type != sf.type)
            throw InputError(base + ".type", "all factors must have the same type");
        spec.factors.push_back(sf);
    }

    if (doc.contains("mu_relations")) {
        const auto& jr = doc["mu_relations"];
        if (!jr.is_array())
            throw InputError("mu_relations", "must be an array");
        for (std::size_t k = 0; k < jr.size(); ++k) {
            const std::string base = at("mu_relations", k);
            const auto& rel = jr[k];
            if (!rel.is_array() || rel.size() != spec.factors.size())
                throw InputError(base, "must be an array with one entry per factor (" +
                                           std::to_string(spec.factors.size()) + ")");
            CenterElem e;
            for (std::size_t i = 0; i < rel.size(); ++i) {
                const auto& f = spec.factors[i];
                const std::string field = at(base, i);
                if (f.type == DynkinType::D && f.rank % 2 == 0) {
                    if (!rel[i].is_array() || rel[i].size() != 2)
                        throw InputError(field, "must be a pair [x, y] of 0|1 for even-rank type D");
                    e.push_back(static_cast<int>(small_int(rel[i][0], at(field, 0), 0, 1)));
                    e.push_back(static_cast<int>(small_int(rel[i][1], at(field, 1), 0, 1)));
                } else if (f.type == DynkinType::D) {
                    e.push_back(static_cast<int>(small_int(rel[i], field, 0, 3)));
                } else {
                    e.push_back(static_cast<int>(small_int(rel[i], field, 0, 1)));
                }
            }
            spec.r_generators.push_back(std::move(e));
        }
    }
    return spec;
}

GroupSpec parse_spec_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("", "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_spec(doc);
}

GroupSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

json spec_to_json(const GroupSpec& spec) {
    json doc;
    doc["factors"] = json::array();
    for (const auto& f : spec.factors)
        doc["factors"].push_back({{"type", std::string(1, rootdata::type_letter(f.type))}, {"rank", f.rank}});
    doc["mu_relations"] = json::array();
    for (const auto& e : spec.r_generators) {
        json rel = json::array();
        std::size_t c = 0;
        for (const auto& f : spec.factors) {
            if (f.type == DynkinType::D && f.rank % 2 == 0) {
                rel.push_back({e.at(c), e.at(c + 1)});
                c += 2;
            } else {
                rel.push_back(e.at(c++));
            }
        }
        doc["mu_relations"].push_back(std::move(rel));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Verification

std::string status_name(Check::Status s) {
    switch (s) {
    case Check::Status::Pass:
        return "pass";
    case Check::Status::Warn:
        return "warn";
    case Check::Status::Fail:
        return "fail";
    case Check::Status::Skipped:
        return "skipped";
    }
    return "?";
}

bool Verification::ok() const {
    for (const auto& c : checks)
        if (c.status == Check::Status::Fail)
            return false;
    return true;
}

bool Verification::has_warnings() const {
    for (const auto& c : checks)
        if (c.status == Check::Status::Warn)
            return true;
    return false;
}

Verification verify(const SemisimpleGroup& g, const invariants::Analysis& a, int height,
                    bool skip_oversized_oracle) {
    using S = Check::Status;
    Verification v;
    v.height = height;

    // Q(G): generic path against the closed forms.
    {
        Check c{"q_closed_form", S::Skipped, ""};
        if (g.type() == DynkinType::D) {
            c.detail = "no closed form for type D";
        } else if (!qdec::q_closed_form_applies(g)) {
            c.detail = "closed-form hypotheses do not hold";
        } else {
            auto closed = g.type() == DynkinType::B ? qdec::q_group_closed_b(g) : qdec::q_group_closed_c(g);
            c.status = closed == a.q ? S::Pass : S::Fail;
            c.detail = "closed " + closed.to_string() + ", lattice " + a.q.to_string();
        }
        v.checks.push_back(std::move(c));
    }

    // Dec(G): closed generators against the orbit oracle.
    {
        Check c{"dec_oracle", S::Pass, ""};
        std::optional<intlat::Sublattice> found;
        try {
            found = qdec::dec_oracle(g, height);
        } catch (const qdec::QDecError& e) {
            if (e.kind() != qdec::QDecError::Kind::WorkBoundExceeded || !skip_oversized_oracle)
                throw;
            c.status = S::Skipped;
            c.detail = e.what();
        }
        const auto& oracle = found ? *found : a.dec;
        if (found && !a.dec.contains(oracle)) {
            c.status = S::Fail;
            c.detail = "oracle " + oracle.to_string() + " not contained in closed " + a.dec.to_string();
        } else if (found && !(oracle == a.dec)) {
            c.status = S::Warn;
            c.detail = "oracle too weak at height " + std::to_string(height) + ": " + oracle.to_string() +
                       " strictly inside " + a.dec.to_string();
        } else if (found) {
            c.detail = "equal at height " + std::to_string(height);
        }
        v.checks.push_back(std::move(c));
    }

    {
        Check c{"lattice_chain", S::Pass, "Dec ⊆ reductive ⊆ Q"};
        if (!a.reductive.contains(a.dec) || !a.q.contains(a.reductive)) {
            c.status = S::Fail;
            c.detail = "expected Dec ⊆ reductive ⊆ Q";
        }
        v.checks.push_back(std::move(c));
    }

    {
        Check c{"inv_red_rank", S::Pass, ""};
        const int lattice_rank = static_cast<int>(a.red.invariant_factors().size());
        if (!a.red.is_elementary_2_group() || lattice_rank != a.theorem_rank)
            c.status = S::Fail;
        c.detail = "lattice " + a.red.to_string() + ", theorem rank " + std::to_string(a.theorem_rank);
        v.checks.push_back(std::move(c));
    }

    {
        Check c{"corollary", S::Skipped, "hypotheses do not hold"};
        if (a.corollary_rank) {
            const int r = *a.corollary_rank;
            const bool same = a.ind == a.red;
            const bool rank_ok = a.ind.is_elementary_2_group() &&
                                 static_cast<int>(a.ind.invariant_factors().size()) == r;
            c.status = same && rank_ok ? S::Pass : S::Fail;
            c.detail = "inv_ind " + a.ind.to_string() + ", inv_red " + a.red.to_string() + ", corollary rank " +
                       std::to_string(r);
        }
        v.checks.push_back(std::move(c));
    }

    {
        Check c{"generator_count", S::Pass, ""};
        const auto n = static_cast<int>(a.generators.entries.size());
        if (n != a.theorem_rank)
            c.status = S::Fail;
        c.detail = std::to_string(n) + (n == 1 ? " generator" : " generators") + ", theorem rank " + std::to_string(a.theorem_rank);
        v.checks.push_back(std::move(c));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Rendering

json lattice_to_json(const intlat::Sublattice& l) {
    json basis = json::array();
    for (std::size_t r = 0; r < l.basis().rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < l.basis().cols(); ++c)
            row.push_back(int_json(l.basis()(r, c)));
        basis.push_back(std::move(row));
    }
    return json{{"ambient_dim", l.ambient_dim()}, {"basis", std::move(basis)}};
}

json group_to_json(const intlat::FiniteAbelianGroup& g) {
    json factors = json::array();
    for (const auto& f : g.invariant_factors())
        factors.push_back(int_json(f));
    return json{{"invariant_factors", std::move(factors)}, {"display", g.to_string()}};
}

std::string subgroup_to_string(const groupspec::RSubgroup& r) {
    auto gens = r.canonical_generators();
    if (gens.empty())
        return "0";
    std::string s = "<";
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k)
            s += ", ";
        s += groupspec::center_elem_to_string(r.layout(), gens[k]);
    }
    return s + ">";
}

namespace {

json verification_json(const Verification& v) {
    json checks = json::array();
    for (const auto& c : v.checks)
        checks.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
    return json{{"oracle_height", v.height}, {"ok", v.ok()}, {"checks", std::move(checks)}};
}

std::string factors_name(const SemisimpleGroup& g) {
    std::string s;
    for (std::size_t i = 0; i < g.m(); ++i)
        s += (i ? " x " : "") + g.factor(i).name();
    return s;
}

std::string basis_md(const intlat::Sublattice& l) {
    std::string s;
    for (std::size_t r = 0; r < l.basis().rows(); ++r) {
        s += r ? ", (" : "(";
        for (std::size_t c = 0; c < l.basis().cols(); ++c)
            s += (c ? ", " : "") + l.basis()(r, c).get_str();
        s += ")";
    }
    return s.empty() ? "0" : s;
}

}  // namespace

json report_json(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v) {
    json doc;
    doc["version"] = kVersion;
    doc["input"] = spec_to_json(g.spec());
    doc["char_lattice"] = lattice_to_json(a.char_lattice);
    doc["q_group"] = lattice_to_json(a.q);
    doc["dec_group"] = lattice_to_json(a.dec);
    doc["reductive_lattice"] = lattice_to_json(a.reductive);
    doc["inv_ind"] = group_to_json(a.ind);
    doc["inv_red"] = group_to_json(a.red);
    doc["theorem_rank"] = a.theorem_rank;
    doc["corollary_rank"] = a.corollary_rank ? json(*a.corollary_rank) : json(nullptr);
    json gens = json::array();
    for (const auto& e : a.generators.entries)
        gens.push_back(e.label);
    doc["generators"] = std::move(gens);
    doc["generator_kernel"] = a.generators.kernel;
    doc["unramified"] = invariants::unramified_status(g);
    doc["verification"] = verification_json(v);
    return doc;
}

std::string report_markdown(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v) {
    std::ostringstream md;
    md << "# " << factors_name(g) << " / mu\n\n";
    md << "- R: " << subgroup_to_string(g.r()) << " (order " << g.r().size() << ")\n";
    md << "- T* basis: " << basis_md(a.char_lattice) << "\n";
    md << "- Q(G) basis: " << basis_md(a.q) << "\n";
    md << "- Dec(G) basis: " << basis_md(a.dec) << "\n";
    md << "- reductive lattice basis: " << basis_md(a.reductive) << "\n\n";
    md << "| group | structure | invariant factors |\n|---|---|---|\n";
    auto row = [&md](const std::string& name, const intlat::FiniteAbelianGroup& grp) {
        std::string fs;
        for (const auto& f : grp.invariant_factors())
            fs += (fs.empty() ? "" : ", ") + f.get_str();
        md << "| " << name << " | " << grp.to_string() << " | [" << fs << "] |\n";
    };
    row("Inv3(G)_ind", a.ind);
    row("Inv3(G)_red", a.red);
    md << "\n- theorem rank: " << a.theorem_rank << "\n";
    md << "- corollary rank: " << (a.corollary_rank ? std::to_string(*a.corollary_rank) : "n/a") << "\n";
    md << "- generators:";
    if (a.generators.entries.empty())
        md << " none";
    for (const auto& e : a.generators.entries)
        md << " " << e.label;
    md << "\n- unramified: " << invariants::unramified_status(g) << "\n\n";
    md << "## Verification (oracle height " << v.height << ")\n\n";
    for (const auto& c : v.checks)
        md << "- " << c.name << ": " << status_name(c.status) << (c.detail.empty() ? "" : " — " + c.detail) << "\n";
    return md.str();
}

json discrepancy_json(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v) {
    json doc;
    doc["input"] = spec_to_json(g.spec());
    json failed = json::array();
    for (const auto& c : v.checks)
        if (c.status == Check::Status::Fail)
            failed.push_back({{"name", c.name}, {"detail", c.detail}});
    doc["failed_checks"] = std::move(failed);
    doc["lattice_path"] = {{"inv_ind", group_to_json(a.ind)}, {"inv_red", group_to_json(a.red)}};
    doc["theorem_path"] = {{"rank", a.theorem_rank},
                           {"corollary_rank", a.corollary_rank ? json(*a.corollary_rank) : json(nullptr)},
                           {"generators", a.generators.entries.size()}};
    doc["lattices"] = {{"char_lattice", lattice_to_json(a.char_lattice)},
                       {"q_group", lattice_to_json(a.q)},
                       {"dec_group", lattice_to_json(a.dec)},
                       {"reductive_lattice", lattice_to_json(a.reductive)}};
    return doc;
}

}  // namespace invcalc::report
