#include "seqdef/robust_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqdef/errors.hpp"
#include "seqdef/percolation.hpp"
#include "seqdef/root_find.hpp"

namespace seqdef {

double binary_divergence(double p, double r)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must lie in (0, 1)");
    const double one = p == 0.0 ? 0.0 : p * std::log(p / r);
    const double zero = p == 1.0 ? 0.0 : (1.0 - p) * (std::log1p(-p) - std::log1p(-r));
    return one + zero;
}

double feasibility_lhs(double p_d, double p_f) { return binary_divergence(p_d, p_f); }

double feasibility_rhs(const RiskBudget& risk, std::uint64_t mc)
{
    if (mc < 1) throw std::invalid_argument("mc must be >= 1");
    return risk.decision_numerator() / static_cast<double>(mc);
}

double feasibility_residual(double p_d, double p_f, const RiskBudget& risk, std::uint64_t mc)
{
    return feasibility_lhs(p_d, p_f) - feasibility_rhs(risk, mc);
}

bool feasible(const DetectorProfile& detector, const RiskBudget& risk, std::uint64_t mc)
{
    return feasibility_residual(detector.p_d, detector.p_f, risk, mc) >= 0.0;
}

OperationPoint min_detection(double p_f, const RiskBudget& risk, std::uint64_t mc)
{
    if (!(p_f > 0.0 && p_f < 1.0)) throw std::invalid_argument("p_f must lie in (0, 1)");
    auto residual = [&](double p_d) { return feasibility_residual(p_d, p_f, risk, mc); };
    if (residual(1.0) < 0.0) throw NumericalError("infeasible at this mC");
    BisectionOptions options;
    options.max_expansions = 0;
    OperationPoint point;
    point.p_f = p_f;
    point.mc = mc;
    point.p_d_min = residual(1.0) == 0.0 ? 1.0 : bisect(residual, p_f, 1.0, options);
    return point;
}

void check_lhs_monotone(double p_f, int samples)
{
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    double previous = feasibility_lhs(p_f, p_f);
    for (int s = 1; s <= samples; ++s) {
        const double p_d = p_f + (1.0 - p_f) * static_cast<double>(s) / (samples + 1);
        const double value = feasibility_lhs(p_d, p_f);
        if (!(value > previous))
            throw NumericalError("divergence is not increasing in p_d; bisection unsafe");
        previous = value;
    }
}

std::vector<OperationPoint> operation_curve(std::span<const double> p_f_grid,
                                            const RiskBudget& risk, std::uint64_t mc)
{
    std::vector<OperationPoint> curve;
    curve.reserve(p_f_grid.size());
    for (const double p_f : p_f_grid) {
        check_lhs_monotone(p_f);
        try {
            curve.push_back(min_detection(p_f, risk, mc));
        } catch (const NumericalError&) {
            curve.push_back({p_f, std::numeric_limits<double>::quiet_NaN(), mc, false});
        }
    }
    return curve;
}

double baseline_requirement(const DegreeModel& model, const DetectorProfile& detector,
                            const RiskBudget& risk)
{
    const double qc = qc_random(model).qc;
    return std::max(expected_reports_random(qc, detector, risk),
                    expected_reports_intentional(detector, risk));
}

bool meets_baseline(double mc, const DegreeModel& model, const DetectorProfile& detector,
                    const RiskBudget& risk)
{
    return mc >= baseline_requirement(model, detector, risk);
}

}  // namespace seqdef
