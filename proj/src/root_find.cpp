#include "seqdef/root_find.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqdef/errors.hpp"

namespace seqdef {

NoRootError::NoRootError(const std::string& what, double lo, double hi, double f_lo, double f_hi)
    : NumericalError([&] {
          std::ostringstream os;
          os.precision(12);
          os << what << " (bracket [" << lo << ", " << hi << "], residuals " << f_lo << ", "
             << f_hi << ")";
          return os.str();
      }()),
      lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi)
{
}

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::invalid_argument(source + ":" + std::to_string(line) + ": " + message), line_(line)
{
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectionOptions& options)
{
    if (!(lo < hi)) throw std::invalid_argument("bisect: empty bracket");

    double f_lo = f(lo);
    double f_hi = f(hi);
    for (int e = 0; e < options.max_expansions && f_lo * f_hi > 0.0; ++e) {
        const double width = hi - lo;
        bool moved = false;
        if (hi < options.upper_limit) {
            hi = std::min(options.upper_limit, hi + width);
            f_hi = f(hi);
            moved = true;
        }
        if (f_lo * f_hi > 0.0 && lo > options.lower_limit) {
            lo = std::max(options.lower_limit, lo - width);
            f_lo = f(lo);
            moved = true;
        }
        if (!moved) break;
    }
    if (std::isnan(f_lo) || std::isnan(f_hi) || f_lo * f_hi > 0.0)
        throw NoRootError("no sign change in bracket", lo, hi, f_lo, f_hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;

    for (int it = 0; it < options.max_iterations; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi || hi - lo <= options.x_tolerance) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace seqdef
