#include "seqdef/sprt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqdef/errors.hpp"
#include "seqdef/philox.hpp"

namespace seqdef {

DetectorProfile::DetectorProfile(double p_d, double p_f) : p_d(p_d), p_f(p_f)
{
    if (!(p_d > 0.0 && p_d < 1.0)) throw std::invalid_argument("p_d must lie in (0, 1)");
    if (!(p_f > 0.0 && p_f < 1.0)) throw std::invalid_argument("p_f must lie in (0, 1)");
    if (p_d < p_f) throw std::invalid_argument("p_d < p_f is not supported");
}

RiskBudget::RiskBudget(double delta, double theta) : delta(delta), theta(theta)
{
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
    if (!(delta + theta < 1.0)) throw std::invalid_argument("delta + theta must be < 1");
}

double RiskBudget::log_a() const { return std::log((1.0 - theta) / delta); }
double RiskBudget::log_b() const { return std::log(theta / (1.0 - delta)); }
double RiskBudget::decision_numerator() const
{
    return theta * log_b() + (1.0 - theta) * log_a();
}

const char* to_string(Decision decision)
{
    switch (decision) {
    case Decision::Continue: return "continue";
    case Decision::AcceptAttack: return "attack";
    case Decision::AcceptNull: return "null";
    }
    return "unknown";
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

bool beyond_targets(const AttackPlan& plan, std::uint64_t i)
{
    return plan.targets_top_nodes() && i > plan.targeted_count();
}

// z for a one and for a zero when P(1 | H1) = p1 and P(1 | H0) = p0.
struct LlrPair {
    double one, zero;
};

LlrPair llr_pair(double p1, double p0)
{
    return {std::log(p1 / p0), std::log1p(-p1) - std::log1p(-p0)};
}

}  // namespace

double attack_probability(const AttackPlan& plan, const DetectorProfile& detector, std::uint64_t i)
{
    if (i < 1) throw std::invalid_argument("report index is 1-based");
    if (!plan.targets_top_nodes()) return plan.q();
    return i <= plan.targeted_count() ? 1.0 : detector.p_f / detector.p_d;
}

double per_report_llr(bool x, const AttackPlan& plan, const DetectorProfile& detector,
                      std::uint64_t i)
{
    if (beyond_targets(plan, i)) return 0.0;
    const double p1 = attack_probability(plan, detector, i) * detector.p_d;
    const auto z = llr_pair(p1, detector.p_f);
    return x ? z.one : z.zero;
}

SprtTrace::SprtTrace(AttackPlan plan, DetectorProfile detector, RiskBudget risk)
    : plan_(plan), detector_(detector), risk_(risk)
{
}

Decision SprtTrace::count_form_decision() const
{
    // Lambda = d z1 + (m - d) z0 over the informative reports, so the
    // thresholds on Lambda become thresholds on the count of ones d.
    const std::uint64_t m = plan_.targets_top_nodes()
                                ? std::min<std::uint64_t>(reports_.size(), plan_.targeted_count())
                                : reports_.size();
    const double p1 = attack_probability(plan_, detector_, 1) * detector_.p_d;
    const auto z = llr_pair(p1, detector_.p_f);
    const double slope = z.one - z.zero;
    const double d = static_cast<double>(effective_ones_);
    const double base = static_cast<double>(m) * z.zero;
    if (slope == 0.0) {
        return risk_.log_b() >= 0.0 ? Decision::AcceptNull : Decision::Continue;
    }
    const double attack_count = (risk_.log_a() - base) / slope;
    const double null_count = (risk_.log_b() - base) / slope;
    if (slope > 0.0) {
        if (d >= attack_count) return Decision::AcceptAttack;
        if (d <= null_count) return Decision::AcceptNull;
    } else {
        if (d <= attack_count) return Decision::AcceptAttack;
        if (d >= null_count) return Decision::AcceptNull;
    }
    return Decision::Continue;
}

Decision SprtTrace::step(bool x)
{
    if (state_ != Decision::Continue) throw std::logic_error("sequential test already decided");
    const std::uint64_t i = reports_.size() + 1;
    reports_.push_back(x);
    if (x) {
        ++ones_;
        if (!beyond_targets(plan_, i)) ++effective_ones_;
    }
    llr_ += per_report_llr(x, plan_, detector_, i);

    Decision decision = Decision::Continue;
    if (llr_ >= risk_.log_a())
        decision = Decision::AcceptAttack;
    else if (llr_ <= risk_.log_b())
        decision = Decision::AcceptNull;

    const Decision alternate = count_form_decision();
    if (alternate != decision) {
        // The two forms differ only by rounding; tolerate disagreement when
        // Lambda sits on a threshold.
        const double gap = std::min(std::abs(llr_ - risk_.log_a()), std::abs(llr_ - risk_.log_b()));
        if (gap > 1e-9 * (1.0 + std::abs(llr_)))
            throw std::logic_error("threshold forms of the sequential test disagree");
    }

    if (decision != Decision::Continue) {
        state_ = decision;
        stop_index_ = i;
    }
    return state_;
}

Decision SprtTrace::truncate(std::uint64_t mc)
{
    if (mc < 1) throw std::invalid_argument("truncation length must be >= 1");
    if (state_ != Decision::Continue) throw std::logic_error("sequential test already decided");
    if (reports_.size() != mc)
        throw std::invalid_argument("truncation requires exactly mc reports");
    state_ = llr_ > 0.0 ? Decision::AcceptAttack : Decision::AcceptNull;
    stop_index_ = mc;
    truncated_ = true;
    return state_;
}

double SprtTrace::recomputed_llr() const
{
    double sum = 0.0;
    for (std::size_t k = 0; k < reports_.size(); ++k)
        sum += per_report_llr(reports_[k], plan_, detector_, k + 1);
    return sum;
}

LlrMoments llr_moments(double p_attack, double p_f)
{
    const auto z = llr_pair(p_attack, p_f);
    const double spread = std::abs(z.one - z.zero);
    return {
        p_f * z.one + (1.0 - p_f) * z.zero,
        p_attack * z.one + (1.0 - p_attack) * z.zero,
        spread * std::sqrt(p_f * (1.0 - p_f)),
        spread * std::sqrt(p_attack * (1.0 - p_attack)),
    };
}

double expected_reports_random(double q, const DetectorProfile& detector, const RiskBudget& risk)
{
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in (0, 1]");
    const double p1 = q * detector.p_d;
    if (p1 == detector.p_f) throw NumericalError("q p_d equals p_f: hypotheses coincide");
    return risk.decision_numerator() / llr_moments(p1, detector.p_f).mean_h1;
}

double expected_reports_intentional(const DetectorProfile& detector, const RiskBudget& risk)
{
    if (detector.p_d == detector.p_f) throw NumericalError("p_d equals p_f: hypotheses coincide");
    return risk.decision_numerator() / llr_moments(detector.p_d, detector.p_f).mean_h1;
}

WorstCaseBounds worst_case_bounds(double q_effective, const DetectorProfile& detector,
                                  const RiskBudget& risk, std::uint64_t mc)
{
    if (mc < 1) throw std::invalid_argument("truncation length must be >= 1");
    if (!(q_effective > 0.0 && q_effective <= 1.0))
        throw std::invalid_argument("q must lie in (0, 1]");
    const double p1 = q_effective * detector.p_d;
    if (p1 == detector.p_f) throw NumericalError("q p_d equals p_f: zero LLR spread");
    const auto mz = llr_moments(p1, detector.p_f);

    const double m = static_cast<double>(mc);
    const double root_m = std::sqrt(m);
    const double log_a = risk.log_a(), log_b = risk.log_b();
    auto clamp01 = [](double p) { return std::clamp(p, 0.0, 1.0); };

    WorstCaseBounds b;
    b.mc = mc;
    b.mean_z_h0 = mz.mean_h0;
    b.mean_z_h1 = mz.mean_h1;
    b.sigma_z_h0 = mz.sigma_h0;
    b.sigma_z_h1 = mz.sigma_h1;
    b.y1 = (log_a - m * mz.mean_h1) / (root_m * mz.sigma_h1);
    b.y2 = (log_b - m * mz.mean_h0) / (root_m * mz.sigma_h0);
    b.y3 = (log_a - m * mz.mean_h0) / (root_m * mz.sigma_h0);
    b.y4 = -root_m * mz.mean_h0 / mz.sigma_h0;
    b.y5 = -root_m * mz.mean_h1 / mz.sigma_h1;
    b.y6 = (log_b - m * mz.mean_h1) / (root_m * mz.sigma_h1);
    b.accept_lower_bound = clamp01(normal_cdf(-b.y1));
    b.reject_lower_bound = clamp01(normal_cdf(b.y2));
    b.delta_at_mc = clamp01(risk.delta + normal_cdf(b.y3) - normal_cdf(b.y4));
    b.theta_at_mc = clamp01(risk.theta + normal_cdf(b.y5) - normal_cdf(b.y6));
    return b;
}

DetectionSummary simulate_detection(const AttackPlan& plan, const DetectorProfile& detector,
                                    const RiskBudget& risk, std::uint64_t mc, std::uint64_t trials,
                                    std::uint64_t seed, Hypothesis truth)
{
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const std::uint64_t limit = mc == 0 ? plan.n() : std::min(mc, plan.n());

    DetectionSummary summary;
    summary.trials = trials;
    double stop_sum = 0.0;
    std::uint64_t attack = 0, null = 0, threshold_attack = 0, truncated = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream rng(seed, t);
        SprtTrace trace(plan, detector, risk);
        while (trace.state() == Decision::Continue && trace.report_count() < limit) {
            const std::uint64_t i = trace.report_count() + 1;
            const double p = truth == Hypothesis::Attack
                                 ? attack_probability(plan, detector, i) * detector.p_d
                                 : detector.p_f;
            trace.step(rng.bernoulli(p));
        }
        if (trace.state() == Decision::Continue) {
            trace.truncate(limit);
            ++truncated;
        } else if (trace.state() == Decision::AcceptAttack) {
            ++threshold_attack;
        }
        (trace.state() == Decision::AcceptAttack ? attack : null) += 1;
        stop_sum += static_cast<double>(trace.stop_index());
        summary.max_stop_index = std::max(summary.max_stop_index, trace.stop_index());
    }
    const double n = static_cast<double>(trials);
    summary.mean_stop_index = stop_sum / n;
    summary.accept_attack_freq = static_cast<double>(attack) / n;
    summary.accept_null_freq = static_cast<double>(null) / n;
    summary.threshold_attack_freq = static_cast<double>(threshold_attack) / n;
    summary.truncated_freq = static_cast<double>(truncated) / n;
    return summary;
}

}  // namespace seqdef
