#pragma once

// JSON forms of algebras, subalgebras, chain bases and numeric reports.
// Rationals are always "p/q" strings.

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "slowent/chain_basis.hpp"
#include "slowent/divergence.hpp"
#include "slowent/lie_algebra.hpp"

namespace slowent {

using Json = nlohmann::ordered_json;

/// { "dim": n, "basis": [...], "brackets": [[i, j, [[k, "p/q"], ...]], ...] }, 0-based, i < j.
Json algebra_to_json(const LieAlgebra& algebra);
LieAlgebra algebra_from_json(const Json& j);

/// { "generators": [["p/q", ...], ...] }
Json subalgebra_to_json(const SubalgebraSpec& u);
SubalgebraSpec subalgebra_from_json(const Json& j, std::size_t dim);

struct Problem {
    std::string name;
    LieAlgebra algebra;
    SubalgebraSpec u;
};

/// Reads a problem file.  The file is either {"algebra": ..., "subalgebra": ...}
/// (optionally with "name") or a bare algebra object, in which case the
/// subalgebra must come from `subalgebra_path`.
Problem load_problem(const std::string& path, const std::optional<std::string>& subalgebra_path = std::nullopt);

Json read_json_file(const std::string& path);

Json polynomial_to_json(const ScalarPoly& p);
ScalarPoly polynomial_from_json(const Json& j, std::size_t k);

Json chain_basis_to_json(const ChainBasis& cb);

Json to_json(const DecayReport& r);
Json to_json(const SublevelReport& r);
Json to_json(const DecayFit& fit);

/// "log_R,log_volume" rows with a header line.
void write_fit_csv(const DecayFit& fit, std::ostream& out);

}  // namespace slowent
