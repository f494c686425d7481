#include "seqdef/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqdef/errors.hpp"
#include "seqdef/root_find.hpp"

namespace seqdef {

namespace {

void require_giant_component(const MomentSummary& m)
{
    if (!(m.tau > 2.0))
        throw NumericalError("network already disconnected in percolation sense (tau <= 2)");
}

// Point masses and upper tails P(K >= k) for the integer-valued models. ER
// uses the untruncated Poisson law, matching the analytic moment identities.
struct DiscreteTail {
    std::vector<double> pmf;
    std::vector<double> tail;  // tail[k] = P(K >= k), one entry past pmf

    double mass(int k) const
    {
        return k < 0 || k >= static_cast<int>(pmf.size()) ? 0.0 : pmf[static_cast<std::size_t>(k)];
    }
    double at_least(int k) const
    {
        if (k <= 0) return tail.front();
        return k >= static_cast<int>(tail.size()) ? 0.0 : tail[static_cast<std::size_t>(k)];
    }
};

DiscreteTail discrete_tail(const DegreeModel& model)
{
    DiscreteTail t;
    if (const auto* er = std::get_if<ErdosRenyi>(&model.kind())) {
        const double mean = er->mean_degree;
        const int last = std::max(model.k_max() + 1,
                                  static_cast<int>(mean + 40.0 * std::sqrt(mean) + 40.0));
        t.pmf.resize(static_cast<std::size_t>(last) + 1);
        for (int k = 0; k <= last; ++k)
            t.pmf[static_cast<std::size_t>(k)] =
                std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    } else if (const auto* emp = std::get_if<Empirical>(&model.kind())) {
        t.pmf.assign(static_cast<std::size_t>(model.k_max()) + 1, 0.0);
        for (const auto& [k, p] : emp->histogram) t.pmf[static_cast<std::size_t>(k)] = p;
    } else {
        throw std::logic_error("discrete tail requested for a continuous model");
    }
    t.tail.assign(t.pmf.size() + 1, 0.0);
    for (std::size_t k = t.pmf.size(); k-- > 0;) t.tail[k] = t.tail[k + 1] + t.pmf[k];
    return t;
}

}  // namespace

CriticalValueReport qc_random(const DegreeModel& model)
{
    const MomentSummary m = moments(model);
    require_giant_component(m);
    CriticalValueReport report;
    report.qc = std::clamp(1.0 - 1.0 / (m.tau - 1.0), 0.0, 1.0);
    report.scheme = ThresholdScheme::Random;
    report.method = SolveMethod::ClosedForm;
    return report;
}

double cutoff_degree(const DegreeModel& model, double q)
{
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("cutoff_degree: q must lie in (0, 1)");
    const double inv_n = 1.0 / static_cast<double>(model.n());
    const double u = q + inv_n;
    const double lo = model.k_min();
    const double hi = model.k_max();
    if (u >= 1.0) return lo;

    if (const auto* p = std::get_if<PowerLaw>(&model.kind()))
        return std::clamp(lo * std::pow(u, 1.0 / (1.0 - p->alpha)), lo, hi);
    if (const auto* e = std::get_if<Exponential>(&model.kind()))
        return std::clamp(-e->beta * std::log(u) + lo, lo, hi);

    // Integer degrees: find k with removed(k) >= q > removed(k + 1) and
    // interpolate linearly between the two.
    const DiscreteTail t = discrete_tail(model);
    const auto removed = [&](int k) { return t.at_least(k) - inv_n; };
    const int first = model.k_min();
    if (q > removed(first)) return lo;
    for (int k = first; k < model.k_max(); ++k) {
        const double here = removed(k);
        const double next = removed(k + 1);
        if (q > next) return k + (here - q) / (here - next);
    }
    return hi;
}

double power_law_intentional_residual(double alpha, int k_min, double x)
{
    return std::pow(x, 2.0 - alpha) -
           k_min * ((2.0 - alpha) / (3.0 - alpha)) * (std::pow(x, 3.0 - alpha) - 1.0) - 2.0;
}

double exponential_intentional_residual(const DegreeModel& model, double q,
                                        IntentionalOptions options)
{
    const auto* e = std::get_if<Exponential>(&model.kind());
    if (e == nullptr) throw std::invalid_argument("exponential residual needs an exponential model");
    const double b = e->beta;
    const double k = model.k_min();
    const double u = q + 1.0 / static_cast<double>(model.n());
    const double inverse_excess = (k + b) / (k * k + 2.0 * k * b + 2.0 * b * b - k - b);
    const double link_deletion = options.exact_exponential
                                     ? u * (k + b - b * std::log(u)) / (k + b)
                                     : (1.0 - std::log(u)) * u;
    return link_deletion + inverse_excess - 1.0;
}

CriticalValueReport qc_intentional(const DegreeModel& model, IntentionalOptions options)
{
    const MomentSummary m = moments(model);
    require_giant_component(m);
    const double inv_n = 1.0 / static_cast<double>(model.n());

    CriticalValueReport report;
    report.scheme = ThresholdScheme::Intentional;
    report.method = SolveMethod::RootSolve;

    if (const auto* er = std::get_if<ErdosRenyi>(&model.kind())) {
        // q(k) = P(K >= k) - 1/N, linkDel(k) = q(k) - 1/N + P(K = k - 1);
        // linkDel is strictly decreasing in k, solve linkDel = 1 - 1/mean.
        const DiscreteTail t = discrete_tail(model);
        const double target = 1.0 - 1.0 / er->mean_degree;
        const auto removed = [&](int k) { return t.at_least(k) - inv_n; };
        const auto link_deletion = [&](int k) { return removed(k) - inv_n + t.mass(k - 1); };
        const int first = model.k_min();
        const int last = static_cast<int>(t.pmf.size());
        if (link_deletion(first) < target)
            throw NoRootError("ER intentional: target link deletion unreachable", first, last,
                              link_deletion(first) - target, link_deletion(last) - target);
        for (int k = first; k < last; ++k) {
            const double here = link_deletion(k);
            const double next = link_deletion(k + 1);
            if (next < target) {
                const double frac = (here - target) / (here - next);
                report.cutoff_degree = k + frac;
                report.link_deletion_prob = target;
                report.qc = std::clamp(removed(k) + frac * (removed(k + 1) - removed(k)), 0.0, 1.0);
                return report;
            }
        }
        throw NoRootError("ER intentional: no crossing in degree range", first, last,
                          link_deletion(first) - target, link_deletion(last) - target);
    }

    if (const auto* p = std::get_if<PowerLaw>(&model.kind())) {
        const double alpha = p->alpha;
        const int k_min = model.k_min();
        BisectionOptions opts;
        opts.max_expansions = 0;
        const double x = bisect(
            [&](double v) { return power_law_intentional_residual(alpha, k_min, v); }, 1.0,
            static_cast<double>(model.k_max()) / k_min, opts);
        report.cutoff_degree = k_min * x;
        report.link_deletion_prob = std::pow(x, 2.0 - alpha);
        report.qc = std::clamp(std::pow(x, 1.0 - alpha), 0.0, 1.0);
        return report;
    }

    if (const auto* e = std::get_if<Exponential>(&model.kind())) {
        BisectionOptions opts;
        opts.max_expansions = 0;
        const double q = bisect(
            [&](double v) { return exponential_intentional_residual(model, v, options); }, 0.0,
            1.0 - inv_n, opts);
        const double u = q + inv_n;
        report.qc = q;
        report.cutoff_degree =
            std::min(-e->beta * std::log(u) + model.k_min(), static_cast<double>(model.k_max()));
        report.link_deletion_prob = 1.0 - 1.0 / (m.tau - 1.0);
        return report;
    }

    throw std::invalid_argument(
        "intentional threshold is defined for ER, power-law and exponential models");
}

std::uint64_t report_budget(std::uint64_t n, double fraction)
{
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("report_budget: fraction must lie in [0, 1]");
    const double x = static_cast<double>(n) * fraction;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace seqdef
