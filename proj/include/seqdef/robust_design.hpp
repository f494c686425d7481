#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seqdef/degree_model.hpp"
#include "seqdef/sprt.hpp"

namespace seqdef {

/// p ln(p/r) + (1-p) ln((1-p)/(1-r)) for p in [0, 1], r in (0, 1); 0 ln 0 = 0.
double binary_divergence(double p, double r);

/// Left side of the feasibility inequality: divergence of p_d from p_f.
double feasibility_lhs(double p_d, double p_f);
/// Right side: decision numerator / mc.
double feasibility_rhs(const RiskBudget& risk, std::uint64_t mc);
/// lhs - rhs; zero on the operation curve.
double feasibility_residual(double p_d, double p_f, const RiskBudget& risk, std::uint64_t mc);

/// True when the intentional-attack test is expected to decide within mc reports.
bool feasible(const DetectorProfile& detector, const RiskBudget& risk, std::uint64_t mc);

struct OperationPoint {
    double p_f = 0.0;
    /// Smallest p_d meeting the inequality with equality; NaN when infeasible.
    double p_d_min = 0.0;
    std::uint64_t mc = 0;
    bool feasible = true;
};

/// Bisection on p_d over (p_f, 1]. Throws NumericalError "infeasible at this
/// mC" when even p_d = 1 falls short.
OperationPoint min_detection(double p_f, const RiskBudget& risk, std::uint64_t mc);

/// Throws NumericalError unless the left side increases in p_d on a grid of
/// `samples` points in (p_f, 1); guards the bisection in sweeps.
void check_lhs_monotone(double p_f, int samples = 64);

/// One operation curve: min_detection at every p_f, infeasible points flagged.
std::vector<OperationPoint> operation_curve(std::span<const double> p_f_grid,
                                            const RiskBudget& risk, std::uint64_t mc);

/// max(M1 under random attack at the random-attack threshold, M1 under
/// intentional attack): the smallest disruption budget that keeps the test useful.
double baseline_requirement(const DegreeModel& model, const DetectorProfile& detector,
                            const RiskBudget& risk);
bool meets_baseline(double mc, const DegreeModel& model, const DetectorProfile& detector,
                    const RiskBudget& risk);

}  // namespace seqdef
