#ifndef NLARZ_NONLOCAL_HPP
#define NLARZ_NONLOCAL_HPP

#include <vector>

#include "nlarz/grid.hpp"

namespace nlarz {

/** Discrete look-ahead window. The observation region [x, x+L_D] of cell i
 * maps to the m_cells cells strictly downstream of i (offsets 1..m, periodic
 * wrap), so m = 1 means "react to the next cell ahead". */
struct LookaheadSpec {
    double distance = 0.0;        // L_D [m]
    int m_cells = 0;              // 0 iff distance == 0
    std::vector<double> weights;  // empty = uniform; else per-offset, sum 1

    /** Uniform window of round(distance/dx) cells (at least 1 when
     * distance > 0). */
    static LookaheadSpec uniform(double distance, const RingGrid& g);

    /** Weighted window; w must be non-negative and sum to 1 within 1e-12. */
    static LookaheadSpec weighted(double distance, const RingGrid& g,
                                  std::vector<double> w);
};

/** rho*_i = (1/m) sum_{j=1..m} rho_{(i+j) mod n}, or rho itself when the
 * window is empty (local ARZ limit). Sliding-window evaluation, O(n)
 * regardless of m. Throws if m_cells > n. */
std::vector<double> lookahead_average(const std::vector<double>& rho,
                                      const LookaheadSpec& spec);

/** rho*_i = sum_j w_j * rho_{(i+j) mod n}. Identical weights take the same
 * sliding-window path as lookahead_average and match it bit-for-bit. */
std::vector<double> weighted_lookahead_average(const std::vector<double>& rho,
                                               const LookaheadSpec& spec);

} // namespace nlarz

#endif
