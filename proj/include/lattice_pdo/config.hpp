#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/lattice.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

// Validation failure with a stable code and the JSON pointer of the offending
// field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)), field_(std::move(field)) {}
    const std::string& code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string code_;
    std::string field_;
};

enum class Task { coeffs, assemble, check_bounds, check_nuclear, order_report, diag_approx, spectrum, fit_growth };

std::string to_string(Task task);

struct SymbolConfig {
    std::string family;  // difference | multiplication | constant | decaying | schrodinger
    double epsilon = 1.0;
    Complex value{1.0, 0.0};
    double s = 3.0, a = 2.0, b = 1.0;
    std::optional<Potential> potential;
    double lambda = 0.0;
    std::optional<SymbolOrder> order_override;
};

struct TaskParams {
    double p = 2.0;
    std::optional<double> q;
    double r = 1.0;
    double p1 = 2.0;
    double p2 = 2.0;
    std::optional<int> q_tilde;
    std::int64_t freq_radius = 3;
    CoefficientMethod method = CoefficientMethod::automatic;
    int points = kDefaultQuadraturePoints;
    double increment_tol = 1e-8;
    std::size_t j_max = 10;
    double tol = 1e-8;
    std::optional<std::pair<std::size_t, std::size_t>> j_range;
    std::size_t max_dimension = 1001;
};

struct ExperimentConfig {
    LatticeSpec lattice{1.0, 1};
    std::optional<SymbolConfig> symbol;   // order-report may give an order instead
    std::optional<std::int64_t> radius;   // empty means "auto"
    Task task = Task::assemble;
    TaskParams params;
    std::string output_directory = "out";
    std::set<std::string> formats{"csv", "json"};
    nlohmann::ordered_json raw;
};

// Largest dense matrix dimension any task will allocate.
inline constexpr std::size_t kMaxDenseDimension = 8193;

ExperimentConfig parse_config(const nlohmann::ordered_json& doc);

Symbol make_symbol(const ExperimentConfig& config);
SymbolOrder effective_order(const ExperimentConfig& config);

// Explicit radius, or ⌈25/ħ⌉ shrunk until the doubled box (2R) fits in
// max_dimension points.
std::int64_t resolve_radius(const ExperimentConfig& config, bool doubled);

}  // namespace lpdo
