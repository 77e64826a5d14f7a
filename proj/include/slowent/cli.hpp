#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slowent/catalog.hpp"
#include "slowent/serialization.hpp"

namespace slowent {

enum class Command { validate, entropy, chain_basis, verify, catalog };
enum class OutputFormat { text, json };

struct RunConfig {
    Command command = Command::entropy;
    std::optional<std::string> input;
    std::optional<std::string> subalgebra;
    /// Family name, or a full spec string such as "direct_sum(a(1),b(2))".
    std::optional<std::string> family;
    std::vector<int> params;
    /// catalog only: family to describe
    std::optional<std::string> describe;
    OutputFormat format = OutputFormat::text;
    /// Skip Jacobi and unipotency checks; catalog input only.
    bool no_validate = false;

    std::vector<double> radii{4, 8, 16, 32, 64};
    std::size_t grid = 0;  ///< points per axis, 0 for the default
    std::size_t samples = 50000;
    std::uint64_t seed = 1;
    double tolerance = 0.1;  ///< relative slope tolerance for the Bowen fit
    std::optional<std::string> csv;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct EntropyReport {
    std::string name;
    std::size_t dim = 0;
    std::size_t k = 0;
    std::vector<std::size_t> dims;
    std::size_t m = 0;
    Rational unnormalized;
    Rational normalized;

    struct Oracle {
        Rational value;
        std::string formula;
        bool match = false;
    };
    std::optional<Oracle> oracle;  ///< present iff the input came from the catalog
    std::optional<std::vector<std::size_t>> chain_basis_levels;
    std::optional<std::vector<CheckResult>> verification;
};

Json to_json(const EntropyReport& r);
EntropyReport entropy_report_from_json(const Json& j);

/// Input source resolved from a config: catalog spec or problem file.
struct LoadedInput {
    Problem problem;
    std::optional<ExampleSpec> spec;
};

LoadedInput load_input(const RunConfig& config);

EntropyReport cmd_entropy(const RunConfig& config);

struct VerifyOutcome {
    EntropyReport report;
    Json details;
    std::optional<DecayFit> fit;
    bool passed() const;
};

VerifyOutcome cmd_verify(const RunConfig& config);

/// Parses arguments (without the program name), runs the command and
/// writes the report.  Returns 0 on success, 1 on a semantic failure
/// (validation or verification), 2 on malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slowent
