#include "semihilbert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace semihilbert {

SweepResult golden_max(const std::function<double(double)>& f, double lo, double hi, double width) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    SweepResult out;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    out.evaluations = 2;
    while (b - a > width) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        ++out.evaluations;
        if (x2 <= x1) break;   // bracket below floating-point resolution
    }
    if (f1 >= f2) {
        out.argmax = x1;
        out.value = f1;
    } else {
        out.argmax = x2;
        out.value = f2;
    }
    out.bracket = b - a;
    return out;
}

namespace {

SweepResult refine(const std::function<double(double)>& f, const std::vector<double>& xs, const std::vector<double>& ys,
                   bool periodic, double step, double lo, double hi, const SweepOptions& opts) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < n; ++i) {
        const bool has_prev = periodic || i > 0;
        const bool has_next = periodic || i + 1 < n;
        const double prev = has_prev ? ys[(i + n - 1) % n] : -INFINITY;
        const double next = has_next ? ys[(i + 1) % n] : -INFINITY;
        if (ys[i] >= prev && ys[i] >= next) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t l, std::size_t r) { return ys[l] > ys[r]; });
    if (peaks.size() > static_cast<std::size_t>(opts.refine_peaks)) peaks.resize(static_cast<std::size_t>(opts.refine_peaks));

    SweepResult best;
    best.value = -INFINITY;
    best.evaluations = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] > best.value) {
            best.value = ys[i];
            best.argmax = xs[i];
            best.bracket = step;
        }
    }
    for (std::size_t idx : peaks) {
        double a = xs[idx] - step;
        double b = xs[idx] + step;
        if (!periodic) {
            a = std::max(a, lo);
            b = std::min(b, hi);
        }
        SweepResult local = golden_max(f, a, b, opts.width);
        best.evaluations += local.evaluations;
        if (local.value > best.value) {
            best.value = local.value;
            best.argmax = local.argmax;
            best.bracket = local.bracket;
        }
    }
    return best;
}

} // namespace

SweepResult maximize_periodic(const std::function<double(double)>& f, double period, const SweepOptions& opts) {
    const int n = std::max(opts.grid, 3);
    const double step = period / n;
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = step * i;
        ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    SweepResult r = refine(f, xs, ys, true, step, 0.0, period, opts);
    r.argmax = std::fmod(r.argmax + period, period);
    return r;
}

SweepResult maximize_interval(const std::function<double(double)>& f, double lo, double hi, const SweepOptions& opts) {
    const int n = std::max(opts.grid, 3);
    const double step = (hi - lo) / (n - 1);
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = i + 1 == n ? hi : lo + step * i;
        ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    return refine(f, xs, ys, false, step, lo, hi, opts);
}

} // namespace semihilbert
