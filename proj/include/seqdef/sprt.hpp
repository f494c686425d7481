#pragma once

#include <cstdint>
#include <vector>

#include "seqdef/attack_plan.hpp"

namespace seqdef {

/// Per-node detector: P(report = 1 | attacked) = p_d, P(report = 1 | intact) = p_f.
/// Requires 0 < p_f <= p_d < 1.
struct DetectorProfile {
    double p_d;
    double p_f;

    DetectorProfile(double p_d, double p_f);
};

/// System false-alarm target delta and miss target theta.
struct RiskBudget {
    double delta;
    double theta;

    RiskBudget(double delta = 0.01, double theta = 0.001);

    /// ln((1 - theta) / delta) > 0.
    double log_a() const;
    /// ln(theta / (1 - delta)) < 0.
    double log_b() const;
    /// theta ln B + (1 - theta) ln A, the drift needed to reach a decision.
    double decision_numerator() const;
};

enum class Hypothesis { Null, Attack };
enum class Decision { Continue, AcceptAttack, AcceptNull };

const char* to_string(Decision decision);

/// Standard normal CDF, 0.5 erfc(-x / sqrt 2).
double normal_cdf(double x);

/// Attack coefficient a_i of report i (1-based): q for random plans; for
/// targeted plans 1 while i <= M and p_f / p_d afterwards.
double attack_probability(const AttackPlan& plan, const DetectorProfile& detector, std::uint64_t i);

/// ln P(x | H1) / P(x | H0) for report i. Exactly 0 for targeted plans past M.
double per_report_llr(bool x, const AttackPlan& plan, const DetectorProfile& detector,
                      std::uint64_t i);

/// Running sequential test over reports ordered by descending node degree.
class SprtTrace {
public:
    SprtTrace(AttackPlan plan, DetectorProfile detector, RiskBudget risk);

    /// Adds report x and applies the threshold rule. The decision is checked
    /// against the equivalent count-of-ones form; throws std::logic_error if
    /// the trace is already decided.
    Decision step(bool x);
    /// Forced decision after exactly mc reports on an undecided trace:
    /// attack iff the cumulative LLR is > 0.
    Decision truncate(std::uint64_t mc);

    Decision state() const { return state_; }
    std::uint64_t report_count() const { return reports_.size(); }
    /// Index of the deciding report, 0 while undecided.
    std::uint64_t stop_index() const { return stop_index_; }
    bool truncated() const { return truncated_; }
    /// Ones among all reports so far.
    std::uint64_t ones() const { return ones_; }
    double llr() const { return llr_; }
    /// Sum of per_report_llr over the stored reports, from scratch.
    double recomputed_llr() const;
    const std::vector<bool>& reports() const { return reports_; }
    const AttackPlan& plan() const { return plan_; }

private:
    Decision count_form_decision() const;

    AttackPlan plan_;
    DetectorProfile detector_;
    RiskBudget risk_;
    std::vector<bool> reports_;
    std::uint64_t ones_ = 0;
    std::uint64_t effective_ones_ = 0;
    double llr_ = 0.0;
    Decision state_ = Decision::Continue;
    std::uint64_t stop_index_ = 0;
    bool truncated_ = false;
};

/// Mean and spread of the per-report LLR when reports are Bernoulli(p_attack)
/// under H1 and Bernoulli(p_f) under H0.
struct LlrMoments {
    double mean_h0, mean_h1, sigma_h0, sigma_h1;
};
LlrMoments llr_moments(double p_attack, double p_f);

/// Expected reports to accept H1 under random attack; real-valued.
/// Throws NumericalError when q p_d == p_f.
double expected_reports_random(double q, const DetectorProfile& detector, const RiskBudget& risk);
/// Same for intentional attack (independent of q). Throws when p_d == p_f.
double expected_reports_intentional(const DetectorProfile& detector, const RiskBudget& risk);

struct WorstCaseBounds {
    std::uint64_t mc = 0;
    double y1, y2, y3, y4, y5, y6;
    /// Lower bounds on terminating within mc reports by accepting H1 / H0.
    double accept_lower_bound, reject_lower_bound;
    /// Upper bounds on the error rates of the test truncated at mc.
    double delta_at_mc, theta_at_mc;
    double mean_z_h0, mean_z_h1, sigma_z_h0, sigma_z_h1;
};

/// Normal-approximation bounds for the test truncated at mc with attack
/// coefficient q_effective (use 1 for a targeted plan with M = mc).
/// Throws NumericalError when q_effective p_d == p_f.
WorstCaseBounds worst_case_bounds(double q_effective, const DetectorProfile& detector,
                                  const RiskBudget& risk, std::uint64_t mc);

struct DetectionSummary {
    std::uint64_t trials = 0;
    double mean_stop_index = 0.0;
    double accept_attack_freq = 0.0;
    double accept_null_freq = 0.0;
    /// Attack declared by crossing ln A before any truncation.
    double threshold_attack_freq = 0.0;
    double truncated_freq = 0.0;
    std::uint64_t max_stop_index = 0;
};

/// Monte-Carlo runs of the test; trial t draws reports from stream t of
/// `seed`. Tests are truncated at min(mc, N); mc = 0 means N.
DetectionSummary simulate_detection(const AttackPlan& plan, const DetectorProfile& detector,
                                    const RiskBudget& risk, std::uint64_t mc, std::uint64_t trials,
                                    std::uint64_t seed, Hypothesis truth);

}  // namespace seqdef
