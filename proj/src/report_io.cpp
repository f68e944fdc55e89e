#include "lattice_pdo/report_io.hpp"

#include <cmath>

#include "lattice_pdo/format.hpp"

namespace lpdo {

namespace {

using ojson = nlohmann::ordered_json;

// JSON has no infinities; they are spelled out as strings.
ojson number(double v)
{
    if (std::isnan(v))
        return nullptr;
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v == 0.0 ? 0.0 : v;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

ojson to_json(const VerdictRecord& record)
{
    ojson j;
    j["verdict"] = to_string(record.verdict);
    j["value"] = number(record.value);
    j["threshold"] = number(record.threshold);
    j["relation"] = record.relation;
    j["sharp"] = record.sharp;
    if (!record.note.empty())
        j["note"] = record.note;
    return j;
}

ojson to_json(const CriterionReport& report)
{
    ojson j;
    ojson sums = ojson::object();
    for (const auto& [name, value] : report.sums)
        sums[name] = number(value);
    j["sums"] = sums;
    ojson verdicts = ojson::object();
    for (const auto& [name, record] : report.verdicts)
        verdicts[name] = to_json(record);
    j["verdicts"] = verdicts;
    j["t"] = report.decay_exponent_t ? number(*report.decay_exponent_t) : ojson(nullptr);
    if (report.truncation)
        j["truncation"] = {{"R", report.truncation->radius}, {"n", report.truncation->n},
                           {"hbar", report.truncation->hbar}};
    else
        j["truncation"] = nullptr;
    return j;
}

ojson to_json(const DoublingCheck& check)
{
    return {{"at_R", number(check.at_radius)}, {"at_2R", number(check.at_double)},
            {"increment", number(check.increment)}, {"ratio", number(check.ratio)},
            {"diverging", check.diverging}, {"converged", check.converged}};
}

ojson to_json(const TailBound& bound)
{
    ojson j;
    j["applicable"] = bound.applicable();
    j["k_tail"] = bound.k_tail_applicable ? number(bound.k_tail) : ojson(nullptr);
    j["m_tail"] = bound.m_tail_applicable ? number(bound.m_tail) : ojson(nullptr);
    j["total"] = bound.applicable() ? number(bound.total()) : ojson(nullptr);
    if (!bound.reason.empty())
        j["reason"] = bound.reason;
    return j;
}

ojson to_json(const DecayReport& decay)
{
    ojson j;
    j["q_tilde"] = decay.q_tilde;
    j["constant"] = number(decay.constant);
    j["k_radius"] = decay.k_radius;
    j["m_radius"] = decay.m_radius;
    j["k_exponent"] = number(decay.k_exponent);
    j["bandwidth"] = decay.bandwidth ? ojson(*decay.bandwidth) : ojson(nullptr);
    return j;
}

ojson to_json(const GrowthFit& fit)
{
    ojson j;
    j["j_range"] = {fit.j_first, fit.j_last};
    j["slope"] = number(fit.slope);
    j["intercept"] = number(fit.intercept);
    ojson bound = ojson::array();
    for (const auto& [r, holds] : fit.r_bound_satisfied)
        bound.push_back({{"r", r}, {"holds", holds}, {"slope_exceeds_inverse_r", fit.slope_exceeds_inverse_r.at(r)}});
    j["r_bound_satisfied"] = bound;
    return j;
}

ojson to_json(const DiagApproxReport& report)
{
    ojson j;
    j["applicable"] = report.applicable;
    j["points"] = report.points.size();
    j["fitted_exponent"] = report.fitted_exponent ? number(*report.fitted_exponent) : ojson(nullptr);
    j["fitted_points"] = report.fitted_points;
    j["outer_half_exponent"] = report.outer_half_exponent ? number(*report.outer_half_exponent) : ojson(nullptr);
    j["residue_norm"] = number(report.residue_norm);
    j["weyl_max_deviation"] = number(report.weyl_max_deviation);
    j["weyl_bound_holds"] = report.weyl_max_deviation <= report.residue_norm + kSandwichSlack;
    j["low_overlap_count"] = report.low_overlap_count;
    return j;
}

void write_diag_approx_csv(std::ostream& os, const DiagApproxReport& report, int dim)
{
    os << "index";
    for (int d = 1; d <= dim; ++d)
        os << ",k_" << d;
    os << ",eigenvalue,diag,residual,overlap,low_overlap\n";
    for (const auto& p : report.points) {
        os << p.index;
        for (double c : p.k)
            os << ',' << format_double(c);
        os << ',' << format_double(p.eigenvalue) << ',' << format_double(p.diagonal) << ','
           << format_double(p.residual) << ',' << format_double(p.overlap) << ',' << flag(p.low_overlap) << '\n';
    }
}

void write_spectrum_csv(std::ostream& os, const ConvergedSpectrum& spectrum)
{
    os << "j,lambda_j,converged,R_used\n";
    for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j)
        os << j + 1 << ',' << format_double(spectrum.eigenvalues[j]) << ',' << flag(spectrum.converged[j]) << ','
           << spectrum.radius_used << '\n';
}

void write_eigenvalues_csv(std::ostream& os, const SpectralResult& spectrum)
{
    os << "j,lambda_j\n";
    for (Eigen::Index j = 0; j < spectrum.eigenvalues.size(); ++j)
        os << j + 1 << ',' << format_double(spectrum.eigenvalues(j)) << '\n';
}

void write_sandwich_csv(std::ostream& os, std::span<const SandwichRecord> records)
{
    os << "j,lower,middle,upper,residue_image,holds\n";
    for (std::size_t j = 0; j < records.size(); ++j) {
        const auto& r = records[j];
        os << j + 1 << ',' << format_double(r.lower) << ',' << format_double(r.middle) << ','
           << format_double(r.upper) << ',' << format_double(r.residue_image) << ',' << flag(r.holds) << '\n';
    }
}

}  // namespace lpdo
