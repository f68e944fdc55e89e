#include "lattice_pdo/symbols.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "lattice_pdo/errors.hpp"

namespace lpdo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int total_order(std::span<const int> beta)
{
    int total = 0;
    for (int b : beta) {
        if (b < 0)
            throw DomainError("multi-index entries must be non-negative");
        total += b;
    }
    return total;
}

// d^j/dθ^j cos(2πθ)
double cos_derivative(int j, double theta)
{
    return std::pow(kTwoPi, j) * std::cos(kTwoPi * theta + j * std::numbers::pi / 2.0);
}

// Index of the single non-zero axis of β, or -1 when β is zero or mixed.
int single_axis(std::span<const int> beta)
{
    int axis = -1;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] == 0)
            continue;
        if (axis >= 0)
            return -2;
        axis = static_cast<int>(j);
    }
    return axis;
}

bool is_zero_frequency(std::span<const std::int64_t> freq)
{
    for (auto f : freq)
        if (f != 0)
            return false;
    return true;
}

// Axis j when freq = ±e_j with sign, otherwise -1.
int unit_frequency_axis(std::span<const std::int64_t> freq)
{
    int axis = -1;
    for (std::size_t j = 0; j < freq.size(); ++j) {
        if (freq[j] == 0)
            continue;
        if (axis >= 0 || (freq[j] != 1 && freq[j] != -1))
            return -1;
        axis = static_cast<int>(j);
    }
    return axis;
}

std::string format_params(const char* name, std::initializer_list<std::pair<const char*, double>> params)
{
    std::ostringstream os;
    os.precision(17);
    os << name << '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        if (!first)
            os << ',';
        os << key << '=' << value;
        first = false;
    }
    os << ')';
    return os.str();
}

Complex finite_difference(const Symbol& sym, std::span<const double> k, Coords theta,
                          std::span<const int> beta, std::size_t axis)
{
    while (axis < beta.size() && beta[axis] == 0)
        ++axis;
    if (axis == beta.size())
        return sym.eval(k, theta);

    const double h = kFiniteDifferenceStep;
    const double centre = theta[axis];
    auto at = [&](double offset) {
        theta[axis] = centre + offset;
        return finite_difference(sym, k, theta, beta, axis + 1);
    };
    if (beta[axis] == 1)
        return (at(h) - at(-h)) / (2.0 * h);
    return (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
}

}  // namespace

SymbolOrder SymbolOrder::make(double mu, double rho, double delta)
{
    if (!std::isfinite(mu))
        throw DomainError("symbol order mu must be finite");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw DomainError("symbol order rho must lie in [0,1]");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw DomainError("symbol order delta must lie in [0,1]");
    return SymbolOrder{mu, rho, delta};
}

Symbol::Symbol(Parts parts) : parts_(std::move(parts))
{
    if (parts_.dim < 1)
        throw DomainError("symbol dimension must be >= 1");
    if (!parts_.eval)
        throw DomainError("symbol requires an evaluation function");
    parts_.order = SymbolOrder::make(parts_.order.mu, parts_.order.rho, parts_.order.delta);
}

int Symbol::deriv_order_available() const noexcept
{
    return parts_.derivative ? kAnalyticDerivativeOrder : kFiniteDifferenceOrder;
}

Complex Symbol::eval(std::span<const double> k, std::span<const double> theta) const
{
    if (k.size() != static_cast<std::size_t>(parts_.dim) || theta.size() != k.size())
        throw DomainError("symbol '" + parts_.id + "' evaluated with wrong dimension");
    return parts_.eval(k, theta);
}

Complex Symbol::closed_form_coefficient(std::span<const double> k, std::span<const std::int64_t> freq) const
{
    if (!parts_.coefficients)
        throw CapabilityError("symbol '" + parts_.id + "' has no closed-form coefficients");
    return parts_.coefficients(k, freq);
}

Complex Symbol::analytic_derivative(std::span<const double> k, std::span<const double> theta,
                                    std::span<const int> beta) const
{
    if (!parts_.derivative)
        throw CapabilityError("symbol '" + parts_.id + "' has no analytic derivative");
    return parts_.derivative(k, theta, beta);
}

Symbol Symbol::with_order(SymbolOrder order) const
{
    Parts parts = parts_;
    parts.order = order;
    return Symbol(std::move(parts));
}

// ---------------------------------------------------------------------------
// Potentials

Potential Potential::anharmonic(double c, int l)
{
    if (!(c >= 0.0) || !std::isfinite(c))
        throw DomainError("anharmonic coefficient must be non-negative and finite");
    if (l < 1)
        throw DomainError("anharmonic power l must be a positive integer");
    Potential v;
    v.c_ = c;
    v.l_ = l;
    return v;
}

Potential Potential::polynomial(std::vector<Monomial> terms)
{
    if (terms.empty())
        throw DomainError("polynomial potential needs at least one term");
    const std::size_t dim = terms.front().exponents.size();
    for (const auto& t : terms) {
        if (t.exponents.size() != dim || dim == 0)
            throw DomainError("polynomial terms must share one non-zero dimension");
        if (!std::isfinite(t.coefficient))
            throw DomainError("polynomial coefficients must be finite");
        for (int e : t.exponents)
            if (e < 0)
                throw DomainError("polynomial exponents must be non-negative");
    }
    Potential v;
    v.terms_ = std::move(terms);
    return v;
}

double Potential::operator()(std::span<const double> k) const
{
    if (is_anharmonic()) {
        double r2 = 0.0;
        for (double x : k)
            r2 += x * x;
        return c_ * std::pow(r2, l_);
    }
    if (k.size() != terms_.front().exponents.size())
        throw DomainError("potential evaluated with wrong dimension");
    double value = 0.0;
    for (const auto& t : terms_) {
        double term = t.coefficient;
        for (std::size_t j = 0; j < k.size(); ++j)
            term *= std::pow(k[j], t.exponents[j]);
        value += term;
    }
    return value;
}

double Potential::order() const noexcept
{
    if (is_anharmonic())
        return c_ > 0.0 ? 2.0 * l_ : 0.0;
    int degree = 0;
    for (const auto& t : terms_) {
        if (t.coefficient == 0.0)
            continue;
        int d = 0;
        for (int e : t.exponents)
            d += e;
        degree = std::max(degree, d);
    }
    return degree;
}

std::string Potential::description() const
{
    std::ostringstream os;
    os.precision(17);
    if (is_anharmonic()) {
        os << c_ << "*|k|^" << 2 * l_;
        return os.str();
    }
    bool first = true;
    for (const auto& t : terms_) {
        if (!first)
            os << " + ";
        os << t.coefficient;
        for (std::size_t j = 0; j < t.exponents.size(); ++j)
            if (t.exponents[j] != 0)
                os << "*k" << j + 1 << '^' << t.exponents[j];
        first = false;
    }
    return os.str();
}

Potential polynomial_potential(double c, int l) { return Potential::anharmonic(c, l); }

// ---------------------------------------------------------------------------
// Built-in symbols

Symbol difference_symbol()
{
    Symbol::Parts p;
    p.id = "difference";
    p.dim = 1;
    p.order = {0.0, 1.0, 0.0};
    p.bandwidth = 1;
    p.eval = [](std::span<const double>, std::span<const double> theta) {
        return std::exp(Complex(0.0, kTwoPi * theta[0])) - 1.0;
    };
    p.coefficients = [](std::span<const double>, std::span<const std::int64_t> freq) -> Complex {
        if (freq[0] == 1)
            return 1.0;
        if (freq[0] == 0)
            return -1.0;
        return 0.0;
    };
    p.derivative = [](std::span<const double>, std::span<const double> theta, std::span<const int> beta) {
        const Complex e = std::exp(Complex(0.0, kTwoPi * theta[0]));
        if (beta[0] == 0)
            return e - 1.0;
        return std::pow(Complex(0.0, kTwoPi), beta[0]) * e;
    };
    return Symbol(std::move(p));
}

Symbol multiplication_symbol(double epsilon, int dim)
{
    if (!std::isfinite(epsilon))
        throw DomainError("multiplication exponent must be finite");
    Symbol::Parts p;
    p.id = format_params("multiplication", {{"epsilon", epsilon}});
    p.dim = dim;
    p.order = {epsilon, 1.0, 0.0};
    p.bandwidth = 0;
    p.eval = [epsilon](std::span<const double> k, std::span<const double>) {
        return Complex(std::pow(euclidean_norm(k), epsilon), 0.0);
    };
    p.coefficients = [epsilon](std::span<const double> k, std::span<const std::int64_t> freq) {
        return is_zero_frequency(freq) ? Complex(std::pow(euclidean_norm(k), epsilon), 0.0) : Complex(0.0);
    };
    p.derivative = [epsilon](std::span<const double> k, std::span<const double>, std::span<const int> beta) {
        return total_order(beta) == 0 ? Complex(std::pow(euclidean_norm(k), epsilon), 0.0) : Complex(0.0);
    };
    return Symbol(std::move(p));
}

Symbol constant_symbol(Complex value, int dim)
{
    Symbol::Parts p;
    std::ostringstream os;
    os.precision(17);
    os << "constant(" << value.real() << ',' << value.imag() << ')';
    p.id = os.str();
    p.dim = dim;
    p.order = {0.0, 1.0, 0.0};
    p.bandwidth = 0;
    p.eval = [value](std::span<const double>, std::span<const double>) { return value; };
    p.coefficients = [value](std::span<const double>, std::span<const std::int64_t> freq) {
        return is_zero_frequency(freq) ? value : Complex(0.0);
    };
    p.derivative = [value](std::span<const double>, std::span<const double>, std::span<const int> beta) {
        return total_order(beta) == 0 ? value : Complex(0.0);
    };
    return Symbol(std::move(p));
}

Symbol decaying_test_symbol(double s, double a, double b, int dim)
{
    if (!std::isfinite(s) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("decaying symbol parameters must be finite");
    auto weight = [s](std::span<const double> k) { return std::pow(1.0 + euclidean_norm(k), -s); };
    Symbol::Parts p;
    p.id = format_params("decaying", {{"s", s}, {"a", a}, {"b", b}});
    p.dim = dim;
    p.order = {-s, 1.0, 0.0};
    p.bandwidth = 1;
    p.eval = [=](std::span<const double> k, std::span<const double> theta) {
        return Complex(weight(k) * (a + b * std::cos(kTwoPi * theta[0])), 0.0);
    };
    p.coefficients = [=](std::span<const double> k, std::span<const std::int64_t> freq) {
        if (is_zero_frequency(freq))
            return Complex(a * weight(k), 0.0);
        if (unit_frequency_axis(freq) == 0)
            return Complex(0.5 * b * weight(k), 0.0);
        return Complex(0.0);
    };
    p.derivative = [=](std::span<const double> k, std::span<const double> theta, std::span<const int> beta) {
        const int axis = single_axis(beta);
        if (axis == -1)
            return Complex(weight(k) * (a + b * std::cos(kTwoPi * theta[0])), 0.0);
        if (axis != 0)
            return Complex(0.0);
        return Complex(weight(k) * b * cos_derivative(beta[0], theta[0]), 0.0);
    };
    return Symbol(std::move(p));
}

Symbol schrodinger_symbol(const LatticeSpec& spec, const Potential& potential, double lambda)
{
    if (!std::isfinite(lambda))
        throw DomainError("shift lambda must be finite");
    const double inv_h2 = 1.0 / (spec.hbar() * spec.hbar());
    const int n = spec.dim();
    Symbol::Parts p;
    std::ostringstream os;
    os.precision(17);
    os << "schrodinger(V=" << potential.description() << ",lambda=" << lambda << ",hbar=" << spec.hbar() << ')';
    p.id = os.str();
    p.dim = n;
    p.order = {potential.order(), 1.0, 0.0};
    p.bandwidth = 1;
    p.eval = [=](std::span<const double> k, std::span<const double> theta) {
        double kinetic = 0.0;
        for (double t : theta)
            kinetic += 2.0 - 2.0 * std::cos(kTwoPi * t);
        return Complex(inv_h2 * kinetic + potential(k) + lambda, 0.0);
    };
    p.coefficients = [=](std::span<const double> k, std::span<const std::int64_t> freq) {
        if (is_zero_frequency(freq))
            return Complex(2.0 * n * inv_h2 + potential(k) + lambda, 0.0);
        if (unit_frequency_axis(freq) >= 0)
            return Complex(-inv_h2, 0.0);
        return Complex(0.0);
    };
    p.derivative = [=](std::span<const double> k, std::span<const double> theta, std::span<const int> beta) {
        const int axis = single_axis(beta);
        if (axis == -1) {
            double kinetic = 0.0;
            for (double t : theta)
                kinetic += 2.0 - 2.0 * std::cos(kTwoPi * t);
            return Complex(inv_h2 * kinetic + potential(k) + lambda, 0.0);
        }
        if (axis < 0)
            return Complex(0.0);
        const auto j = static_cast<std::size_t>(axis);
        return Complex(-2.0 * inv_h2 * cos_derivative(beta[j], theta[j]), 0.0);
    };
    return Symbol(std::move(p));
}

Symbol symbol_from_matrix(const KernelMatrix& kernel)
{
    const LatticeSpec spec = kernel.spec();
    const BoxTruncation box = kernel.box();
    const int n = spec.dim();
    const Eigen::Index size = kernel.size();

    // Frequencies (m − k)/ħ of every column relative to every row are
    // differences of integer box coordinates; precompute the column coordinates.
    auto columns_ptr = std::make_shared<std::vector<IntCoords>>();
    columns_ptr->reserve(static_cast<std::size_t>(size));
    for (Eigen::Index c = 0; c < size; ++c)
        columns_ptr->push_back(integer_point_of(n, box, static_cast<std::size_t>(c)));
    std::shared_ptr<const std::vector<IntCoords>> shared_columns = std::move(columns_ptr);

    auto row_of = [spec, box](std::span<const double> k) -> std::optional<std::size_t> {
        IntCoords z;
        try {
            z = to_integer(spec, k);
        } catch (const DomainError&) {
            return std::nullopt;
        }
        if (!in_box(box, z))
            return std::nullopt;
        return integer_index_of(box, z);
    };

    auto shared_entries = std::make_shared<const Eigen::MatrixXcd>(kernel.entries());

    Symbol::Parts p;
    p.id = "from_matrix(" + (kernel.provenance().empty() ? std::string("anonymous") : kernel.provenance()) + ')';
    p.dim = n;
    p.order = {0.0, 1.0, 0.0};
    p.bandwidth = 2 * box.radius();
    p.eval = [=](std::span<const double> k, std::span<const double> theta) {
        const auto& columns = *shared_columns;
        const auto& entries = *shared_entries;
        const auto row = row_of(k);
        if (!row)
            return Complex(0.0);
        const IntCoords& zk = columns[*row];
        Complex sum = 0.0;
        for (Eigen::Index c = 0; c < size; ++c) {
            const Complex a = entries(static_cast<Eigen::Index>(*row), c);
            if (a == Complex(0.0))
                continue;
            double phase = 0.0;
            for (int d = 0; d < n; ++d) {
                const auto dd = static_cast<std::size_t>(d);
                phase += static_cast<double>(columns[static_cast<std::size_t>(c)][dd] - zk[dd]) * theta[dd];
            }
            sum += a * std::exp(Complex(0.0, kTwoPi * phase));
        }
        return sum;
    };
    p.coefficients = [=](std::span<const double> k, std::span<const std::int64_t> freq) {
        const auto& columns = *shared_columns;
        const auto& entries = *shared_entries;
        const auto row = row_of(k);
        if (!row)
            return Complex(0.0);
        IntCoords zm = columns[*row];
        for (std::size_t d = 0; d < zm.size(); ++d)
            zm[d] += freq[d];
        if (!in_box(box, zm))
            return Complex(0.0);
        return entries(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(integer_index_of(box, zm)));
    };
    p.derivative = [=](std::span<const double> k, std::span<const double> theta, std::span<const int> beta) {
        const auto& columns = *shared_columns;
        const auto& entries = *shared_entries;
        const auto row = row_of(k);
        if (!row)
            return Complex(0.0);
        const IntCoords& zk = columns[*row];
        Complex sum = 0.0;
        for (Eigen::Index c = 0; c < size; ++c) {
            const Complex a = entries(static_cast<Eigen::Index>(*row), c);
            if (a == Complex(0.0))
                continue;
            double phase = 0.0;
            Complex factor = 1.0;
            for (int d = 0; d < n; ++d) {
                const auto dd = static_cast<std::size_t>(d);
                const double f = static_cast<double>(columns[static_cast<std::size_t>(c)][dd] - zk[dd]);
                phase += f * theta[dd];
                factor *= std::pow(Complex(0.0, kTwoPi * f), beta[dd]);
            }
            sum += a * factor * std::exp(Complex(0.0, kTwoPi * phase));
        }
        return sum;
    };
    return Symbol(std::move(p));
}

Complex eval_symbol(const Symbol& sym, std::span<const double> k, std::span<const double> theta)
{
    return sym.eval(k, theta);
}

Complex theta_derivative(const Symbol& sym, std::span<const double> k, std::span<const double> theta,
                         std::span<const int> beta)
{
    if (beta.size() != static_cast<std::size_t>(sym.dim()))
        throw DomainError("multi-index dimension does not match symbol dimension");
    const int order = total_order(beta);
    if (order > sym.deriv_order_available())
        throw CapabilityError("symbol '" + sym.id() + "' supports θ-derivatives up to order " +
                              std::to_string(sym.deriv_order_available()));
    if (order == 0)
        return sym.eval(k, theta);
    if (sym.has_analytic_derivative())
        return sym.analytic_derivative(k, theta, beta);
    return finite_difference(sym, k, Coords(theta.begin(), theta.end()), beta, 0);
}

double periodicity_defect(const Symbol& sym, const LatticeSpec& spec, int samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coord(-10, 10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> axis(0, sym.dim() - 1);

    double worst = 0.0;
    Coords k(static_cast<std::size_t>(sym.dim()));
    Coords theta(k.size());
    for (int s = 0; s < samples; ++s) {
        for (std::size_t d = 0; d < k.size(); ++d) {
            k[d] = spec.hbar() * static_cast<double>(coord(rng));
            theta[d] = unit(rng);
        }
        Coords shifted = theta;
        shifted[static_cast<std::size_t>(axis(rng))] += 1.0;
        worst = std::max(worst, std::abs(sym.eval(k, theta) - sym.eval(k, shifted)));
    }
    return worst;
}

}  // namespace lpdo
