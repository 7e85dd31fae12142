#include "invcalc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "invcalc/groupspec.hpp"
#include "invcalc/invariants.hpp"
#include "invcalc/qdec.hpp"
#include "invcalc/report.hpp"

namespace invcalc::cli {

using report::json;

std::size_t worker_count() {
    if (const char* env = std::getenv("INVCALC_WORKERS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1)
            return static_cast<std::size_t>(std::min(n, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::vector<int> parse_ranks(const std::string& text) {
    std::vector<int> ranks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int r = 0;
        try {
            r = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw report::InputError("--ranks", "expected a comma-separated list of integers, got \"" + text + "\"");
        ranks.push_back(r);
    }
    if (ranks.empty())
        throw report::InputError("--ranks", "at least one rank is required");
    return ranks;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string emit_rows(const std::vector<EnumerateRow>& rows, const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"r", r.r},
                           {"order", r.order},
                           {"inv_ind", r.inv_ind},
                           {"inv_red", r.inv_red},
                           {"theorem_rank", r.theorem_rank},
                           {"verdict", r.verdict},
                           {"detail", r.detail}});
        out << arr.dump(2) << "\n";
    } else if (format == "md") {
        out << "| R | order | inv_ind | inv_red | theorem rank | verdict |\n";
        out << "|---|---|---|---|---|---|\n";
        for (const auto& r : rows)
            out << "| " << r.r << " | " << r.order << " | " << r.inv_ind << " | " << r.inv_red << " | "
                << r.theorem_rank << " | " << r.verdict << " |\n";
    } else {
        out << "r,order,inv_ind,inv_red,theorem_rank,verdict\n";
        for (const auto& r : rows)
            out << csv_field(r.r) << "," << r.order << "," << csv_field(r.inv_ind) << "," << csv_field(r.inv_red)
                << "," << r.theorem_rank << "," << r.verdict << "\n";
    }
    return out.str();
}

int cmd_compute(const std::string& path, const std::string& format, std::ostream& out) {
    groupspec::SemisimpleGroup g(report::load_spec_file(path));
    auto a = invariants::analyze(g);
    auto v = report::verify(g, a, 2, true);
    if (format == "md")
        out << report::report_markdown(g, a, v);
    else
        out << report::report_json(g, a, v).dump(2) << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, int height, std::ostream& out) {
    groupspec::SemisimpleGroup g(report::load_spec_file(path));
    auto a = invariants::analyze(g);
    auto v = report::verify(g, a, height);
    for (const auto& c : v.checks)
        out << report::status_name(c.status) << " " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    if (!v.ok()) {
        out << "discrepancy report:\n" << report::discrepancy_json(g, a, v).dump(2) << "\n";
        return kMismatch;
    }
    return kOk;
}

}  // namespace

std::vector<EnumerateRow> enumerate_rows(rootdata::DynkinType type, const std::vector<int>& ranks, int height,
                                         std::size_t workers) {
    std::vector<rootdata::SimpleFactor> factors;
    for (int n : ranks)
        factors.push_back({type, n});
    auto subgroups = groupspec::enumerate_subgroups(factors);
    std::vector<EnumerateRow> rows(subgroups.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < subgroups.size(); k = next++) {
            const auto& r = subgroups[k];
            EnumerateRow& row = rows[k];
            row.r = report::subgroup_to_string(r);
            row.order = r.size();
            try {
                groupspec::SemisimpleGroup g({factors, r.canonical_generators()});
                auto a = invariants::analyze(g);
                auto v = report::verify(g, a, height, true);
                row.inv_ind = a.ind.to_string();
                row.inv_red = a.red.to_string();
                row.theorem_rank = a.theorem_rank;
                row.verdict = !v.ok() ? "fail" : (v.has_warnings() ? "warn" : "pass");
                for (const auto& c : v.checks)
                    if (c.status == report::Check::Status::Fail || c.status == report::Check::Status::Warn)
                        row.detail += (row.detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
            } catch (const std::exception& e) {
                row.verdict = "error";
                row.detail = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(subgroups.size(), 1));
    for (std::size_t t = 1; t < n; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Degree-3 cohomological invariants of split semisimple groups of type B, C, D", "invcalc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(report::kVersion));

    std::string file, format = "json", emit = "csv", out_path, type, ranks;
    int height = 2;

    auto* compute = app.add_subcommand("compute", "Compute the invariant groups of a group specification");
    compute->add_option("file", file, "JSON group specification")->required();
    compute->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "md"}));

    auto* verify = app.add_subcommand("verify", "Cross-check closed forms against the lattice and orbit paths");
    verify->add_option("file", file, "JSON group specification")->required();
    verify->add_option("--height", height, "Oracle height H")->check(CLI::Range(0, 64));

    auto* enumerate = app.add_subcommand("enumerate", "Tabulate every central quotient of a product");
    enumerate->add_option("--type", type, "Dynkin type")->required()->check(CLI::IsMember({"B", "C", "D"}));
    enumerate->add_option("--ranks", ranks, "Comma-separated ranks")->required();
    enumerate->add_option("--emit", emit, "Table format")->check(CLI::IsMember({"csv", "md", "json"}));
    enumerate->add_option("--out", out_path, "Write the table to this file");
    enumerate->add_option("--height", height, "Oracle height H")->check(CLI::Range(0, 64));

    std::vector<const char*> argv{"invcalc"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*compute)
            return cmd_compute(file, format, out);
        if (*verify)
            return cmd_verify(file, height, out);

        const auto t = rootdata::parse_type(type.at(0));
        std::vector<rootdata::SimpleFactor> factors;
        auto rank_list = parse_ranks(ranks);
        for (std::size_t i = 0; i < rank_list.size(); ++i) {
            rootdata::SimpleFactor f{t, rank_list[i]};
            try {
                f.validate();
            } catch (const std::invalid_argument& e) {
                throw report::InputError("--ranks[" + std::to_string(i) + "]", e.what());
            }
        }
        auto rows = enumerate_rows(t, rank_list, height, worker_count());
        const std::string table = emit_rows(rows, emit);
        if (out_path.empty()) {
            out << table;
        } else {
            std::ofstream f(out_path);
            if (!f)
                throw report::InputError("--out", "cannot write " + out_path);
            f << table;
        }
        const bool bad = std::any_of(rows.begin(), rows.end(),
                                     [](const EnumerateRow& r) { return r.verdict == "fail" || r.verdict == "error"; });
        return bad ? kMismatch : kOk;
    } catch (const report::InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const groupspec::SpecError& e) {
        err << "error: " << e.field() << ": " << e.what() << "\n";
        return kInputError;
    } catch (const qdec::QDecError& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == qdec::QDecError::Kind::WorkBoundExceeded ? kInputError : kMismatch;
    } catch (const intlat::LatticeError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace invcalc::cli
