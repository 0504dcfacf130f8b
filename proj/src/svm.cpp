#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "physiograde/classifiers.hpp"
#include "physiograde/error.hpp"

namespace physio {

namespace {

// Working state for one SMO run; kernel matrix is precomputed (n is small).
struct SmoState {
    std::span<const int> y;
    std::vector<std::vector<double>> kernel;
    std::vector<double> alpha;
    double bias = 0.0;
    double c = 0.0;
    double tol = 0.0;

    double decision(std::size_t i) const {
        double value = bias;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (alpha[j] != 0.0) value += alpha[j] * y[j] * kernel[j][i];
        }
        return value;
    }

    double error(std::size_t i) const { return decision(i) - y[i]; }

    // Clamped updates can land a last-bit inside a bound; classify bound
    // membership with a band so such points are not mistaken for free ones.
    double bound_eps() const { return 1e-10 * c; }
    bool at_lower(std::size_t i) const { return alpha[i] <= bound_eps(); }
    bool at_upper(std::size_t i) const { return alpha[i] >= c - bound_eps(); }
    bool non_bound(std::size_t i) const { return !at_lower(i) && !at_upper(i); }

    // Platt's per-step bias updates are only a heuristic and can go stale,
    // which would let the KKT gate below miss real violators (or flag
    // non-violators whose pair steps all fail, stalling the sweep). Re-true
    // the bias from the current duals: average over free vectors, otherwise
    // the midpoint of the interval the bound constraints allow.
    void recompute_bias() {
        std::size_t n = alpha.size();
        double free_sum = 0.0;
        std::size_t free_count = 0;
        double b_lo = -std::numeric_limits<double>::infinity();
        double b_hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double f_nb = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (alpha[j] != 0.0) f_nb += alpha[j] * y[j] * kernel[j][i];
            }
            double on_margin = y[i] - f_nb; // the bias putting i exactly on the margin
            if (non_bound(i)) {
                free_sum += on_margin;
                ++free_count;
            } else if ((at_lower(i) && y[i] > 0) || (at_upper(i) && y[i] < 0)) {
                b_lo = std::max(b_lo, on_margin);
            } else {
                b_hi = std::min(b_hi, on_margin);
            }
        }
        if (free_count > 0) {
            bias = free_sum / double(free_count);
        } else if (std::isinf(b_lo)) {
            bias = b_hi;
        } else if (std::isinf(b_hi)) {
            bias = b_lo;
        } else {
            bias = (b_lo + b_hi) / 2.0;
        }
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        double a1 = alpha[i1], a2 = alpha[i2];
        double y1 = y[i1], y2 = y[i2];
        double e1 = error(i1), e2 = error(i2);
        double s = y1 * y2;

        double low, high;
        if (y1 != y2) {
            low = std::max(0.0, a2 - a1);
            high = std::min(c, c + a2 - a1);
        } else {
            low = std::max(0.0, a1 + a2 - c);
            high = std::min(c, a1 + a2);
        }
        if (low >= high) return false;

        double k11 = kernel[i1][i1], k22 = kernel[i2][i2], k12 = kernel[i1][i2];
        double eta = k11 + k22 - 2.0 * k12;
        if (eta <= 0.0) return false; // identical points; no progress possible

        double a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, low, high);
        if (std::abs(a2_new - a2) < 1e-10 * (a2_new + a2 + 1e-10)) return false;
        // In exact arithmetic a1_new stays inside [0, C]; the clamp only
        // absorbs the last-bit rounding of the update.
        double a1_new = std::clamp(a1 + s * (a2 - a2_new), 0.0, c);

        double d1 = y1 * (a1_new - a1);
        double d2 = y2 * (a2_new - a2);
        double b1 = bias - e1 - d1 * k11 - d2 * k12;
        double b2 = bias - e2 - d1 * k12 - d2 * k22;
        if (a1_new > 0.0 && a1_new < c) {
            bias = b1;
        } else if (a2_new > 0.0 && a2_new < c) {
            bias = b2;
        } else {
            bias = (b1 + b2) / 2.0;
        }
        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        return true;
    }

    // Returns 1 if i2 violated the KKT conditions and a step was taken.
    int examine(std::size_t i2) {
        double e2 = error(i2);
        double r2 = e2 * y[i2];
        bool violates = (r2 < -tol && !at_upper(i2)) || (r2 > tol && !at_lower(i2));
        if (!violates) return 0;

        std::size_t n = alpha.size();
        // Second choice by largest |E1 - E2| over the non-bound set, ties to
        // the lower index.
        std::size_t best = n;
        double best_gap = -1.0;
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            if (i1 == i2 || !non_bound(i1)) continue;
            double gap = std::abs(error(i1) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i1;
            }
        }
        if (best < n && take_step(best, i2)) return 1;
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            if (i1 != i2 && non_bound(i1) && take_step(i1, i2)) return 1;
        }
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            if (i1 != i2 && take_step(i1, i2)) return 1;
        }
        return 0;
    }
};

} // namespace

SmoResult smo_train(std::span<const FeatureVector> x, std::span<const int> y, double c,
                    double gamma, double tol, int max_passes) {
    std::size_t n = x.size();
    if (n == 0) fail(Errc::EmptyInput, "smo_train on empty data");
    if (c <= 0.0) fail(Errc::InvalidArgument, "C must be > 0");

    SmoState state;
    state.y = y;
    state.alpha.assign(n, 0.0);
    state.c = c;
    state.tol = tol;
    state.kernel.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double k = rbf_kernel(x[i], x[j], gamma);
            state.kernel[i][j] = k;
            state.kernel[j][i] = k;
        }
    }

    SmoResult result;
    bool examine_all = true;
    int pass = 0;
    while (pass < max_passes) {
        state.recompute_bias();
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (examine_all || state.non_bound(i)) changed += state.examine(i);
        }
        ++pass;
        if (examine_all) {
            if (changed == 0) {
                result.converged = true;
                break;
            }
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }
    state.recompute_bias();

    result.alpha = std::move(state.alpha);
    result.bias = state.bias;
    result.passes = pass;
    return result;
}

double svm_dual_objective(std::span<const FeatureVector> x, std::span<const int> y,
                          std::span<const double> alpha, double gamma) {
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        linear += alpha[i];
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * rbf_kernel(x[i], x[j], gamma);
        }
    }
    return linear - 0.5 * quad;
}

} // namespace physio
