#include "nlarz/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlarz {

namespace {

int window_cells(double distance, const RingGrid& g) {
    if (distance < 0.0)
        throw std::invalid_argument("lookahead: distance must be non-negative");
    if (distance == 0.0) return 0;
    int m = static_cast<int>(std::max(1L, std::lround(distance / g.dx)));
    if (m > g.n_cells)
        throw std::invalid_argument("lookahead: window of " + std::to_string(m) +
                                    " cells exceeds the ring of " +
                                    std::to_string(g.n_cells));
    return m;
}

// Prefix sums over the wrapped field bound the rounding error per call
// instead of letting a running window sum drift.
std::vector<double> sliding_average(const std::vector<double>& rho, int m) {
    const int n = static_cast<int>(rho.size());
    std::vector<double> prefix(n + m + 1);
    prefix[0] = 0.0;
    for (int t = 0; t < n + m; ++t)
        prefix[t + 1] = prefix[t] + rho[t < n ? t : t - n];
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (prefix[i + 1 + m] - prefix[i + 1]) / m;
    return out;
}

}  // namespace

LookaheadSpec LookaheadSpec::uniform(double distance, const RingGrid& g) {
    LookaheadSpec spec;
    spec.distance = distance;
    spec.m_cells = window_cells(distance, g);
    return spec;
}

LookaheadSpec LookaheadSpec::weighted(double distance, const RingGrid& g,
                                      std::vector<double> w) {
    LookaheadSpec spec;
    spec.distance = distance;
    spec.m_cells = window_cells(distance, g);
    if (static_cast<int>(w.size()) != spec.m_cells)
        throw std::invalid_argument(
            "lookahead: expected " + std::to_string(spec.m_cells) +
            " weights, got " + std::to_string(w.size()));
    double sum = 0.0;
    for (double wi : w) {
        if (wi < 0.0)
            throw std::invalid_argument("lookahead: weights must be non-negative");
        sum += wi;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("lookahead: weights must sum to 1, got " +
                                    std::to_string(sum));
    spec.weights = std::move(w);
    return spec;
}

std::vector<double> lookahead_average(const std::vector<double>& rho,
                                      const LookaheadSpec& spec) {
    const int n = static_cast<int>(rho.size());
    if (spec.m_cells > n)
        throw std::invalid_argument("lookahead: window exceeds the field");
    if (spec.m_cells == 0) return rho;
    return sliding_average(rho, spec.m_cells);
}

std::vector<double> weighted_lookahead_average(const std::vector<double>& rho,
                                               const LookaheadSpec& spec) {
    const int n = static_cast<int>(rho.size());
    const int m = spec.m_cells;
    if (m > n)
        throw std::invalid_argument("lookahead: window exceeds the field");
    if (m == 0) return rho;
    if (static_cast<int>(spec.weights.size()) != m)
        throw std::invalid_argument("lookahead: weighted average needs weights");
    bool uniform = true;
    const double w0 = 1.0 / m;
    for (double w : spec.weights)
        if (w != w0) {
            uniform = false;
            break;
        }
    if (uniform) return sliding_average(rho, m);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += spec.weights[j - 1] * rho[(i + j) % n];
        out[i] = acc;
    }
    return out;
}

}  // namespace nlarz
