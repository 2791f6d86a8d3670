#pragma once

#include <functional>

namespace semihilbert {

struct SweepResult {
    double argmax = 0.0;
    double value = 0.0;
    int evaluations = 0;
    double bracket = 0.0;   // final golden-section bracket width
};

struct SweepOptions {
    int grid = 360;
    double width = 1e-12;
    int refine_peaks = 3;   // local grid maxima handed to golden-section
};

/// Maximize a 2π-periodic (or `period`-periodic) function: uniform grid over
/// one period, then golden-section inside ±one grid step of the best local
/// maxima.
SweepResult maximize_periodic(const std::function<double(double)>& f, double period, const SweepOptions& opts);

/// Same on the closed interval [lo, hi] (endpoints included in the grid).
SweepResult maximize_interval(const std::function<double(double)>& f, double lo, double hi, const SweepOptions& opts);

/// Golden-section search for a maximum inside [lo, hi].
SweepResult golden_max(const std::function<double(double)>& f, double lo, double hi, double width);

} // namespace semihilbert
