#pragma once

// Q(G) = S^2(T*) ∩ (+) Z q_i and its subgroup Dec(G) generated by the
// classes c_2(rho(lambda)), all as sublattices of d-coordinates Z^m where
// d = (d_1, ..., d_m) stands for q = sum d_i q_i.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "invcalc/groupspec.hpp"
#include "invcalc/intlat.hpp"
#include "invcalc/rootdata.hpp"

namespace invcalc::qdec {

using groupspec::SemisimpleGroup;
using intlat::Int;
using intlat::IntVector;
using intlat::Sublattice;
using rootdata::QForm;
using rootdata::Weight;

using DVector = IntVector;

class QDecError : public std::runtime_error {
public:
    enum class Kind { HypothesisNotSatisfied, NotInCharLattice, NonIntegralC2, NotInKillingSpan, WorkBoundExceeded };

    QDecError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Generic path: d such that sum d_i q_i has integral coefficients in a Z-basis of T*.
Sublattice q_group(const SemisimpleGroup& g);

/// True when the closed-form description of Q(G) applies: type B with all
/// n_i >= 2, type C with all n_i even, or R = R_1 (+) R_2 in either type.
bool q_closed_form_applies(const SemisimpleGroup& g);
Sublattice q_group_closed_b(const SemisimpleGroup& g);
Sublattice q_group_closed_c(const SemisimpleGroup& g);

/// Coordinates of a form in the basis {q_i}; throws NotInKillingSpan otherwise.
DVector killing_coordinates(const SemisimpleGroup& g, const QForm& form);

/// c_2(rho(lambda)) = -1/2 sum_{chi in W(lambda)} chi^2 for a global weight lambda in T*,
/// computed factor by factor.
DVector c2_rho(const SemisimpleGroup& g, const Weight& lambda);
/// The same quantity summed over the materialized product orbit (for cross-checking).
DVector c2_rho_direct(const SemisimpleGroup& g, const Weight& lambda);

Sublattice dec_closed(const SemisimpleGroup& g);

struct OracleLimits {
    std::uint64_t max_weyl_order = 10'000'000;       // per factor
    std::uint64_t max_dominant_weights = 1'000'000;  // per factor, (H+1)^{n_i}
};

/// Lattice generated by c_2(rho(lambda)) over dominant lambda in T* whose
/// fundamental-weight coefficients lie in [0, height].
Sublattice dec_oracle(const SemisimpleGroup& g, int height, const OracleLimits& limits = {});

/// {d in Q(G) : |w_{i,j}| divides theta_{i,j} d_i for all i, j}.
Sublattice reductive_lattice(const SemisimpleGroup& g);

}  // namespace invcalc::qdec
