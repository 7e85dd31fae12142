#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "invcalc/cli.hpp"
#include "invcalc/report.hpp"

namespace fs = std::filesystem;
using invcalc::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// A file under the system temp directory, removed on scope exit.
class TempFile {
public:
    explicit TempFile(const std::string& contents, const std::string& ext = ".json") {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("invcalc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ext);
        std::ofstream(path_) << contents;
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    std::string path() const { return path_.string(); }

private:
    fs::path path_;
};

const char* kSpin7 = R"({"factors":[{"type":"B","rank":3}],"mu_relations":[[1]]})";
const char* kPGSp8 = R"({"factors":[{"type":"C","rank":4}],"mu_relations":[]})";

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("compute Spin7") {
    TempFile f(kSpin7);
    auto r = invoke({"compute", f.path()});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["inv_red"]["invariant_factors"] == json::array({2}));
    CHECK(doc["generators"] == json::array({"e3_phi(e1)"}));
    CHECK(doc["theorem_rank"] == 1);
    CHECK(doc["version"] == invcalc::report::kVersion);

    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"version", "input", "char_lattice", "q_group", "dec_group",
                                           "reductive_lattice", "inv_ind", "inv_red", "theorem_rank",
                                           "corollary_rank", "generators", "generator_kernel", "unramified",
                                           "verification"});
}

TEST_CASE("compute PGSp8 in both formats") {
    TempFile f(kPGSp8);
    auto j = invoke({"compute", f.path(), "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(json::parse(j.out)["generators"] == json::array({"Delta(1)"}));

    auto md = invoke({"compute", f.path(), "--format", "md"});
    REQUIRE(md.code == 0);
    CHECK(md.out.find("Delta(1)") != std::string::npos);
    CHECK(md.out.find("Z/2") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    TempFile f(R"({"factors":[{"type":"D","rank":4},{"type":"D","rank":5}],"mu_relations":[[[1,1],2]]})");
    auto a = invoke({"compute", f.path()});
    auto b = invoke({"compute", f.path()});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("input errors exit with 2") {
    TempFile d2(R"({"factors":[{"type":"D","rank":2}],"mu_relations":[]})");
    auto r = invoke({"compute", d2.path()});
    CHECK(r.code == 2);
    CHECK(r.err.find("rank must be ≥ 3 for type D") != std::string::npos);
    CHECK(r.err.find("factors[0].rank") != std::string::npos);

    TempFile corrupt(R"({"factors":[{"type":"B","rank":3}],"mu_relations":[[1]])");
    auto c = invoke({"verify", corrupt.path()});
    CHECK(c.code == 2);
    CHECK(c.err.find("parse error") != std::string::npos);

    TempFile bad_gen(R"({"factors":[{"type":"B","rank":3}],"mu_relations":[[2]]})");
    auto g = invoke({"compute", bad_gen.path()});
    CHECK(g.code == 2);
    CHECK(g.err.find("mu_relations[0][0]") != std::string::npos);

    CHECK(invoke({"compute", "/nonexistent/spec.json"}).code == 2);
    CHECK(invoke({"enumerate", "--type", "A", "--ranks", "1"}).code == 2);
    CHECK(invoke({"enumerate", "--type", "D", "--ranks", "3,x"}).code == 2);
    CHECK(invoke({"enumerate", "--type", "D", "--ranks", "2"}).code == 2);
    CHECK(invoke({}).code == 2);
}

TEST_CASE("verify") {
    TempFile f(kSpin7);
    auto ok = invoke({"verify", f.path()});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("pass dec_oracle") != std::string::npos);
    CHECK(ok.out.find("pass inv_red_rank") != std::string::npos);

    auto weak = invoke({"verify", f.path(), "--height", "0"});
    CHECK(weak.code == 0);
    CHECK(weak.out.find("warn dec_oracle") != std::string::npos);
    CHECK(weak.out.find("too weak") != std::string::npos);
}

TEST_CASE("enumerate row counts") {
    auto b1 = invoke({"enumerate", "--type", "B", "--ranks", "1"});
    CHECK(b1.code == 0);
    CHECK(count_lines(b1.out) == 1 + 2);
    CHECK(count_lines(invoke({"enumerate", "--type", "B", "--ranks", "1,1"}).out) == 1 + 5);
    auto d3 = invoke({"enumerate", "--type", "D", "--ranks", "3", "--emit", "json"});
    CHECK(d3.code == 0);
    auto rows = json::parse(d3.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["r"] == "0");
    CHECK(rows[1]["order"] == 2);
    CHECK(rows[2]["order"] == 4);
    for (const auto& row : rows)
        CHECK(row["verdict"] == "pass");
}

TEST_CASE("enumerate writes files and is independent of worker count") {
    TempFile out("", ".md");
    auto r = invoke({"enumerate", "--type", "C", "--ranks", "2,4", "--emit", "md", "--out", out.path()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out.path());
    std::string table((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(count_lines(table) == 2 + 5);

    auto one = invcalc::cli::enumerate_rows(invcalc::rootdata::DynkinType::D, {4, 3}, 2, 1);
    auto many = invcalc::cli::enumerate_rows(invcalc::rootdata::DynkinType::D, {4, 3}, 2, 8);
    REQUIRE(one.size() == many.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        CHECK(one[k].r == many[k].r);
        CHECK(one[k].inv_red == many[k].inv_red);
        CHECK(one[k].verdict == many[k].verdict);
    }
}

TEST_CASE("specifications round-trip through JSON") {
    auto spec = invcalc::report::parse_spec_text(
        R"({"factors":[{"type":"D","rank":4},{"type":"D","rank":5}],"mu_relations":[[[1,0],2],[[0,1],0]]})");
    auto doc = invcalc::report::spec_to_json(spec);
    auto again = invcalc::report::parse_spec_text(doc.dump());
    CHECK(again.factors.size() == 2);
    CHECK(again.r_generators == spec.r_generators);

    // A report's echoed input re-parses to an equivalent group.
    TempFile f(kSpin7);
    auto report = json::parse(invoke({"compute", f.path()}).out);
    auto echoed = invcalc::report::parse_spec(report["input"]);
    CHECK(echoed.r_generators == std::vector<invcalc::groupspec::CenterElem>{{1}});
    // Lattice bases reload as full-rank sublattices equal to the computed ones.
    for (const char* key : {"char_lattice", "q_group", "dec_group", "reductive_lattice"}) {
        std::vector<invcalc::intlat::IntVector> rows;
        for (const auto& row : report[key]["basis"]) {
            invcalc::intlat::IntVector v;
            for (const auto& x : row)
                v.emplace_back(x.get<long>());
            rows.push_back(v);
        }
        invcalc::intlat::Sublattice l(report[key]["ambient_dim"].get<std::size_t>(), rows);
        CHECK(l.is_full_rank());
    }
    CHECK(report["dec_group"]["basis"] == json::parse("[[2]]"));
}
