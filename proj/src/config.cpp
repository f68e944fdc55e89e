#include "lattice_pdo/config.hpp"

#include <cmath>
#include <limits>

#include "lattice_pdo/errors.hpp"

namespace lpdo {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& code, const std::string& field, const std::string& message)
{
    throw ConfigError(code, field, message);
}

const ojson& require(const ojson& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object() || !obj.contains(key))
        fail("missing_field", path + "/" + key, "required field is missing");
    return obj.at(key);
}

const ojson* find(const ojson& obj, const std::string& key)
{
    if (!obj.is_object())
        return nullptr;
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const ojson& v, const std::string& path)
{
    if (!v.is_number())
        fail("invalid_type", path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        fail("out_of_range", path, "expected a finite number");
    return x;
}

// Numbers, plus the strings "inf"/"infinity" for exponents that allow it.
double as_exponent(const ojson& v, const std::string& path)
{
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        fail("invalid_type", path, "expected a number or \"inf\"");
    }
    return as_number(v, path);
}

std::int64_t as_integer(const ojson& v, const std::string& path)
{
    if (!v.is_number_integer())
        fail("invalid_type", path, "expected an integer");
    return v.get<std::int64_t>();
}

std::string as_string(const ojson& v, const std::string& path)
{
    if (!v.is_string())
        fail("invalid_type", path, "expected a string");
    return v.get<std::string>();
}

double number_or(const ojson& obj, const std::string& key, const std::string& path, double fallback)
{
    const ojson* v = find(obj, key);
    return v ? as_number(*v, path + "/" + key) : fallback;
}

void check(bool ok, const std::string& path, const std::string& message)
{
    if (!ok)
        fail("out_of_range", path, message);
}

Task parse_task(const std::string& name, const std::string& path)
{
    static const std::pair<const char*, Task> table[] = {
        {"coeffs", Task::coeffs},           {"assemble", Task::assemble},
        {"check-bounds", Task::check_bounds}, {"check-nuclear", Task::check_nuclear},
        {"order-report", Task::order_report}, {"diag-approx", Task::diag_approx},
        {"spectrum", Task::spectrum},       {"fit-growth", Task::fit_growth},
    };
    for (const auto& [text, task] : table)
        if (name == text)
            return task;
    fail("unknown_value", path, "unknown task '" + name + "'");
}

Potential parse_potential(const ojson& v, const std::string& path, int dim)
{
    const std::string type = as_string(require(v, "type", path), path + "/type");
    try {
        if (type == "anharmonic") {
            const double c = number_or(v, "c", path, 1.0);
            const std::int64_t l = as_integer(require(v, "l", path), path + "/l");
            check(l >= 1 && l <= 16, path + "/l", "l must lie in [1, 16]");
            return Potential::anharmonic(c, static_cast<int>(l));
        }
        if (type == "polynomial") {
            const ojson& terms = require(v, "terms", path);
            if (!terms.is_array() || terms.empty())
                fail("invalid_type", path + "/terms", "expected a non-empty array");
            std::vector<Monomial> monomials;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string tp = path + "/terms/" + std::to_string(i);
                Monomial m;
                m.coefficient = as_number(require(terms[i], "coefficient", tp), tp + "/coefficient");
                const ojson& ex = require(terms[i], "exponents", tp);
                if (!ex.is_array() || ex.size() != static_cast<std::size_t>(dim))
                    fail("invalid_type", tp + "/exponents", "expected one exponent per lattice dimension");
                for (std::size_t d = 0; d < ex.size(); ++d)
                    m.exponents.push_back(static_cast<int>(as_integer(ex[d], tp + "/exponents/" + std::to_string(d))));
                monomials.push_back(std::move(m));
            }
            return Potential::polynomial(std::move(monomials));
        }
    } catch (const DomainError& e) {
        fail("out_of_range", path, e.what());
    }
    fail("unknown_value", path + "/type", "unknown potential type '" + type + "'");
}

SymbolConfig parse_symbol(const ojson& v, const std::string& path, int dim)
{
    SymbolConfig sc;
    sc.family = as_string(require(v, "family", path), path + "/family");
    static const ojson empty = ojson::object();
    const ojson* found = find(v, "params");
    const ojson& params = found ? *found : empty;
    const std::string pp = path + "/params";
    if (found && !found->is_object())
        fail("invalid_type", pp, "expected an object");

    if (sc.family == "difference") {
        check(dim == 1, path + "/family", "the difference symbol is one-dimensional");
    } else if (sc.family == "multiplication") {
        sc.epsilon = number_or(params, "epsilon", pp, 1.0);
    } else if (sc.family == "constant") {
        sc.value = Complex(number_or(params, "re", pp, 1.0), number_or(params, "im", pp, 0.0));
    } else if (sc.family == "decaying") {
        sc.s = number_or(params, "s", pp, 3.0);
        sc.a = number_or(params, "a", pp, 2.0);
        sc.b = number_or(params, "b", pp, 1.0);
        check(sc.s >= 0.0, pp + "/s", "s must be non-negative");
    } else if (sc.family == "schrodinger") {
        sc.potential = parse_potential(require(params, "potential", pp), pp + "/potential", dim);
        sc.lambda = number_or(params, "lambda", pp, 0.0);
    } else {
        fail("unknown_value", path + "/family", "unknown symbol family '" + sc.family + "'");
    }
    return sc;
}

std::optional<SymbolOrder> parse_order(const ojson& params, const std::string& pp)
{
    if (!find(params, "mu"))
        return std::nullopt;
    try {
        return SymbolOrder::make(as_number(params.at("mu"), pp + "/mu"), number_or(params, "rho", pp, 1.0),
                                 number_or(params, "delta", pp, 0.0));
    } catch (const DomainError& e) {
        fail("out_of_range", pp, e.what());
    }
}

void parse_params(const ojson& params, const std::string& pp, Task task, TaskParams& t)
{
    if (const ojson* v = find(params, "p"))
        t.p = as_exponent(*v, pp + "/p");
    if (const ojson* v = find(params, "q"))
        t.q = as_exponent(*v, pp + "/q");
    t.r = number_or(params, "r", pp, t.r);
    t.p1 = number_or(params, "p1", pp, t.p1);
    t.p2 = number_or(params, "p2", pp, t.p2);
    check(t.p >= 1.0, pp + "/p", "p must be >= 1");
    check(t.r > 0.0 && t.r <= 1.0, pp + "/r", "r must lie in (0, 1]");
    check(t.p1 >= 1.0, pp + "/p1", "p1 must be >= 1");
    check(t.p2 >= 1.0, pp + "/p2", "p2 must be >= 1");
    if (t.q) {
        const double lhs = 1.0 / t.p + 1.0 / *t.q;
        check(std::abs(lhs - 1.0) <= 1e-12, pp + "/q", "p and q must be conjugate");
    }
    if (task == Task::check_bounds && t.p > 1.0)
        check(std::isfinite(t.p), pp + "/p", "p must be finite");

    if (const ojson* v = find(params, "q_tilde")) {
        const auto q = as_integer(*v, pp + "/q_tilde");
        check(q >= 0 && q <= kAnalyticDerivativeOrder, pp + "/q_tilde", "q_tilde must lie in [0, 16]");
        t.q_tilde = static_cast<int>(q);
    }
    if (const ojson* v = find(params, "freq_radius")) {
        t.freq_radius = as_integer(*v, pp + "/freq_radius");
        check(t.freq_radius >= 0 && t.freq_radius <= 1000, pp + "/freq_radius", "freq_radius must lie in [0, 1000]");
    }
    if (const ojson* v = find(params, "method")) {
        const auto m = as_string(*v, pp + "/method");
        if (m == "automatic")
            t.method = CoefficientMethod::automatic;
        else if (m == "quadrature")
            t.method = CoefficientMethod::quadrature;
        else
            fail("unknown_value", pp + "/method", "method must be 'automatic' or 'quadrature'");
    }
    if (const ojson* v = find(params, "points")) {
        const auto n = as_integer(*v, pp + "/points");
        check(n >= 1 && n <= 4096, pp + "/points", "points must lie in [1, 4096]");
        t.points = static_cast<int>(n);
    }
    t.increment_tol = number_or(params, "increment_tol", pp, t.increment_tol);
    check(t.increment_tol > 0.0, pp + "/increment_tol", "increment_tol must be positive");
    if (const ojson* v = find(params, "j_max")) {
        const auto j = as_integer(*v, pp + "/j_max");
        check(j >= 1, pp + "/j_max", "j_max must be >= 1");
        t.j_max = static_cast<std::size_t>(j);
    }
    t.tol = number_or(params, "tol", pp, t.tol);
    check(t.tol > 0.0, pp + "/tol", "tol must be positive");
    if (const ojson* v = find(params, "j_range")) {
        if (!v->is_array() || v->size() != 2)
            fail("invalid_type", pp + "/j_range", "expected [j_first, j_last]");
        const auto a = as_integer((*v)[0], pp + "/j_range/0");
        const auto b = as_integer((*v)[1], pp + "/j_range/1");
        check(a >= 1 && b > a, pp + "/j_range", "j_range must satisfy 1 <= j_first < j_last");
        t.j_range = {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    }
    if (const ojson* v = find(params, "max_dimension")) {
        const auto d = as_integer(*v, pp + "/max_dimension");
        check(d >= 1 && static_cast<std::size_t>(d) <= kMaxDenseDimension, pp + "/max_dimension",
              "max_dimension must lie in [1, " + std::to_string(kMaxDenseDimension) + "]");
        t.max_dimension = static_cast<std::size_t>(d);
    }

    if (task == Task::fit_growth && !t.j_range)
        fail("missing_field", pp + "/j_range", "fit-growth requires j_range");
    if (task == Task::fit_growth && !find(params, "j_max"))
        t.j_max = t.j_range->second;
    if (t.j_range && t.j_range->second > t.j_max)
        fail("out_of_range", pp + "/j_range", "j_range exceeds j_max");
}

}  // namespace

std::string to_string(Task task)
{
    switch (task) {
    case Task::coeffs: return "coeffs";
    case Task::assemble: return "assemble";
    case Task::check_bounds: return "check-bounds";
    case Task::check_nuclear: return "check-nuclear";
    case Task::order_report: return "order-report";
    case Task::diag_approx: return "diag-approx";
    case Task::spectrum: return "spectrum";
    case Task::fit_growth: return "fit-growth";
    }
    return "unknown";
}

ExperimentConfig parse_config(const ojson& doc)
{
    if (!doc.is_object())
        fail("invalid_type", "", "config must be a JSON object");
    ExperimentConfig cfg;
    cfg.raw = doc;

    const ojson& lattice = require(doc, "lattice", "");
    const double hbar = as_number(require(lattice, "hbar", "/lattice"), "/lattice/hbar");
    const auto dim = as_integer(require(lattice, "dim", "/lattice"), "/lattice/dim");
    check(hbar > 0.0, "/lattice/hbar", "hbar must be positive");
    check(dim >= 1 && dim <= 6, "/lattice/dim", "dim must lie in [1, 6]");
    cfg.lattice = LatticeSpec(hbar, static_cast<int>(dim));

    cfg.task = parse_task(as_string(require(doc, "task", ""), "/task"), "/task");

    static const ojson empty = ojson::object();
    const ojson* params = find(doc, "params");
    if (params && !params->is_object())
        fail("invalid_type", "/params", "expected an object");
    parse_params(params ? *params : empty, "/params", cfg.task, cfg.params);

    if (const ojson* sym = find(doc, "symbol"))
        cfg.symbol = parse_symbol(*sym, "/symbol", static_cast<int>(dim));
    const auto order = parse_order(params ? *params : empty, "/params");
    if (cfg.symbol)
        cfg.symbol->order_override = order;
    if (!cfg.symbol && !(cfg.task == Task::order_report && order))
        fail("missing_field", "/symbol", "task requires a symbol");
    if (cfg.task == Task::order_report && !cfg.symbol && order) {
        // Orders without a concrete symbol are carried on an empty family.
        cfg.symbol = SymbolConfig{};
        cfg.symbol->family = "";
        cfg.symbol->order_override = order;
    }
    if ((cfg.task == Task::spectrum || cfg.task == Task::fit_growth) && cfg.symbol->family != "schrodinger")
        fail("out_of_range", "/symbol/family", "spectrum tasks need the schrodinger family");

    if (const ojson* trunc = find(doc, "truncation")) {
        const ojson& r = require(*trunc, "radius", "/truncation");
        if (r.is_string()) {
            if (r.get<std::string>() != "auto")
                fail("unknown_value", "/truncation/radius", "radius must be an integer or \"auto\"");
        } else {
            const auto radius = as_integer(r, "/truncation/radius");
            check(radius >= 0, "/truncation/radius", "radius must be non-negative");
            cfg.radius = radius;
        }
    }

    if (const ojson* out = find(doc, "output")) {
        if (const ojson* d = find(*out, "directory"))
            cfg.output_directory = as_string(*d, "/output/directory");
        if (const ojson* f = find(*out, "formats")) {
            if (!f->is_array())
                fail("invalid_type", "/output/formats", "expected an array of strings");
            cfg.formats.clear();
            for (std::size_t i = 0; i < f->size(); ++i) {
                const auto name = as_string((*f)[i], "/output/formats/" + std::to_string(i));
                if (name != "csv" && name != "json" && name != "binary")
                    fail("unknown_value", "/output/formats/" + std::to_string(i),
                         "format must be csv, json or binary");
                cfg.formats.insert(name);
            }
        }
    }
    return cfg;
}

Symbol make_symbol(const ExperimentConfig& config)
{
    const SymbolConfig& sc = *config.symbol;
    const int dim = config.lattice.dim();
    Symbol sym = [&] {
        if (sc.family == "difference")
            return difference_symbol();
        if (sc.family == "multiplication")
            return multiplication_symbol(sc.epsilon, dim);
        if (sc.family == "constant")
            return constant_symbol(sc.value, dim);
        if (sc.family == "decaying")
            return decaying_test_symbol(sc.s, sc.a, sc.b, dim);
        if (sc.family == "schrodinger")
            return schrodinger_symbol(config.lattice, *sc.potential, sc.lambda);
        fail("missing_field", "/symbol", "task requires a concrete symbol");
    }();
    if (sc.order_override)
        sym = sym.with_order(*sc.order_override);
    return sym;
}

SymbolOrder effective_order(const ExperimentConfig& config)
{
    if (config.symbol->order_override)
        return *config.symbol->order_override;
    return make_symbol(config).order();
}

std::int64_t resolve_radius(const ExperimentConfig& config, bool doubled)
{
    const int n = config.lattice.dim();
    const std::int64_t factor = doubled ? 2 : 1;
    if (config.radius) {
        if (BoxTruncation(factor * *config.radius).size(n) > kMaxDenseDimension)
            throw DomainError("box exceeds the dense matrix budget of " + std::to_string(kMaxDenseDimension) +
                              " points");
        return *config.radius;
    }
    auto r = static_cast<std::int64_t>(std::ceil(25.0 / config.lattice.hbar()));
    while (r > 0 && BoxTruncation(factor * r).size(n) > config.params.max_dimension)
        --r;
    return r;
}

}  // namespace lpdo
