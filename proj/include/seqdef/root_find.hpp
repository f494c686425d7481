#pragma once

#include <functional>
#include <limits>

namespace seqdef {

struct BisectionOptions {
    /// Stop once the bracket is narrower than this. Zero means run to
    /// adjacent doubles, which is what the residual checks downstream need.
    double x_tolerance = 0.0;
    int max_iterations = 200;
    /// Bracket expansion: the bracket may grow geometrically toward these
    /// hard limits until the endpoints change sign.
    double lower_limit = -std::numeric_limits<double>::infinity();
    double upper_limit = std::numeric_limits<double>::infinity();
    int max_expansions = 60;
};

/// Root of a continuous function by bisection. Throws NoRootError with the
/// final bracket and its residuals when no sign change can be found.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectionOptions& options = {});

}  // namespace seqdef
