#pragma once

// Input documents, cross-path verification and report rendering.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "invcalc/groupspec.hpp"
#include "invcalc/invariants.hpp"

namespace invcalc::report {

using groupspec::GroupSpec;
using groupspec::SemisimpleGroup;
using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// Malformed input document; `field` names the offending location.
class InputError : public std::runtime_error {
public:
    InputError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// {"factors":[{"type":"B","rank":3}],"mu_relations":[[1]]}. Relation entries are
/// 0|1 for B and C, 0..3 for odd-rank D, [x, y] with x, y in {0, 1} for even-rank D.
GroupSpec parse_spec(const nlohmann::json& doc);
GroupSpec parse_spec_text(const std::string& text);
GroupSpec load_spec_file(const std::string& path);
json spec_to_json(const GroupSpec& spec);

struct Check {
    enum class Status { Pass, Warn, Fail, Skipped };
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

std::string status_name(Check::Status s);

struct Verification {
    int height = 2;
    std::vector<Check> checks;

    bool ok() const;
    bool has_warnings() const;
};

/// Compares every independent path: Q closed forms, oracle vs closed Dec,
/// lattice ranks vs theorem and corollary, generator count. With
/// skip_oversized_oracle an oracle over the work bound is reported as skipped
/// instead of throwing WorkBoundExceeded.
Verification verify(const SemisimpleGroup& g, const invariants::Analysis& a, int height,
                    bool skip_oversized_oracle = false);

json lattice_to_json(const intlat::Sublattice& l);
json group_to_json(const intlat::FiniteAbelianGroup& g);
json report_json(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v);
std::string report_markdown(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v);
/// Everything needed to reproduce a failed verification.
json discrepancy_json(const SemisimpleGroup& g, const invariants::Analysis& a, const Verification& v);

/// "<e1+e2, e3>" or "0".
std::string subgroup_to_string(const groupspec::RSubgroup& r);

}  // namespace invcalc::report
