#pragma once

#include <cstdint>
#include <optional>

#include "seqdef/degree_model.hpp"

namespace seqdef {

enum class ThresholdScheme { Random, Intentional };
enum class SolveMethod { ClosedForm, RootSolve };

struct CriticalValueReport {
    double qc = 0.0;
    ThresholdScheme scheme = ThresholdScheme::Random;
    /// Intentional attack only: degree cutoff after removing the top qc
    /// fraction, and the equivalent random link-deletion probability.
    std::optional<double> cutoff_degree;
    std::optional<double> link_deletion_prob;
    SolveMethod method = SolveMethod::ClosedForm;
};

/// Random attack: qc = 1 - 1 / (tau0 - 1). Throws NumericalError when
/// tau0 <= 2 (no giant component to destroy).
CriticalValueReport qc_random(const DegreeModel& model);

/// Degree above which the top q fraction of nodes lies:
/// tail(cutoff) - 1/N = q. Returns k_min when q + 1/N >= 1.
double cutoff_degree(const DegreeModel& model, double q);

struct IntentionalOptions {
    /// Exponential model only. The default drops k_min from the link
    /// deletion probability (small-k_min simplification); set to keep it.
    bool exact_exponential = false;
};

/// Intentional (highest-degree-first) attack threshold for ER, power-law and
/// exponential models. Throws NoRootError when the defining equation has no
/// root inside the admissible bracket.
CriticalValueReport qc_intentional(const DegreeModel& model, IntentionalOptions options = {});

/// Residual of the power-law cutoff equation at x = cutoff / k_min:
/// x^(2-a) - k_min (2-a)/(3-a) (x^(3-a) - 1) - 2.
double power_law_intentional_residual(double alpha, int k_min, double x);

/// Residual of the exponential threshold equation at removed fraction q:
/// [1 - ln(q + 1/N)](q + 1/N) + (k_min + b)/(k_min^2 + 2 k_min b + 2 b^2 - k_min - b) - 1.
/// With exact_exponential the k_min-dependent link deletion probability is
/// used instead of the bracketed term.
double exponential_intentional_residual(const DegreeModel& model, double q,
                                        IntentionalOptions options = {});

/// Reports available before disruption: ceil(N * qc). Products within 1e-9
/// of an integer snap to that integer so that float noise does not add a report.
std::uint64_t report_budget(std::uint64_t n, double fraction);

}  // namespace seqdef
