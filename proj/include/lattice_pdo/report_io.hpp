#pragma once

#include <ostream>
#include <span>

#include <json.hpp>

#include "lattice_pdo/criteria.hpp"
#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/spectral.hpp"

namespace lpdo {

nlohmann::ordered_json to_json(const VerdictRecord& record);
// {sums, verdicts, t, truncation: {R, n, hbar}}
nlohmann::ordered_json to_json(const CriterionReport& report);
nlohmann::ordered_json to_json(const DoublingCheck& check);
nlohmann::ordered_json to_json(const TailBound& bound);
nlohmann::ordered_json to_json(const DecayReport& decay);
nlohmann::ordered_json to_json(const GrowthFit& fit);
// Summary only; the per-point table goes to CSV.
nlohmann::ordered_json to_json(const DiagApproxReport& report);

// index, k_1..k_n, eigenvalue, diag, residual, overlap, low_overlap
void write_diag_approx_csv(std::ostream& os, const DiagApproxReport& report, int dim);
// j, lambda_j, converged, R_used
void write_spectrum_csv(std::ostream& os, const ConvergedSpectrum& spectrum);
// j, lambda_j
void write_eigenvalues_csv(std::ostream& os, const SpectralResult& spectrum);
// j, lower, middle, upper, residue_image, holds
void write_sandwich_csv(std::ostream& os, std::span<const SandwichRecord> records);

}  // namespace lpdo
