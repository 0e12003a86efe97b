#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "lje/harness.hpp"
#include "lje/kernel.hpp"
#include "lje/stationary.hpp"

namespace lje {

/// Shortest round-trip formatting (%.17g), so equal doubles give equal bytes.
std::string format_double(double x);

/// `t,q,value,stderr` with q the bin centers.
void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats);
/// `t,q,rho`.
void write_pde_csv(std::ostream& out, const PdeSolution& sol);
/// `seed,t,x,eta`.
void write_snapshots_csv(std::ostream& out, const SnapshotSet& snapshots);
/// `q,rho_bar`.
void write_stationary_csv(std::ostream& out, const StationaryProfile& sp);
/// `gamma,theta,regime,sigma_hat,kappa_hat,m_hat,time_scale_exponent`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
/// `t,l1,linf,mean_stderr,boxcar_left,pde_left,boxcar_right,pde_right`.
void write_validation_csv(std::ostream& out, const ValidationReport& report);
/// `N,l1,linf,mean_stderr`.
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);

nlohmann::json regime_json(const Regime& regime);
nlohmann::json kernel_info_json(const JumpKernel& kernel, int N);
nlohmann::json shape_report_json(const ShapeReport& report);

/// Writes through a temporary file; throws on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lje
