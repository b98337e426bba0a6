#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gpckit/gpc.hpp"
#include "gpckit/plant.hpp"
#include "gpckit/polynomial.hpp"

namespace gpckit {

struct StabilityReport {
    Polynomial char_poly;  // in z^-1, untrimmed structural length
    std::vector<std::complex<double>> poles;
    double max_modulus = 0.0;
    bool stable = false;
    double margin = 0.0;
};

struct SweepRecord {
    int horizon_p = 0;
    double lambda_weight = 0.0;
    double r = 0.0;
    double vo_ref = 0.0;
    double max_modulus = 0.0;
    bool stable = false;
    std::string error;  // nonempty when the point failed to evaluate
    std::vector<std::complex<double>> poles;
};

struct SweepGrid {
    std::vector<int> horizons;
    std::vector<double> lambdas;
    std::vector<double> loads;
    std::vector<double> vrefs;
};

/// Closed-loop characteristic polynomial in RST form:
/// R = 1 + z^-1 sum_j k_j gprime_j, S = sum_j k_j F_j,
/// D = Atilde R + z^-1 B S. Built without coefficient trimming so the
/// structural origin pole (vanishing trailing coefficient) is preserved.
Polynomial closed_loop_charpoly(const DiscreteTf& plant, const GpcSynthesis& syn);

/// Roots of the characteristic polynomial and the unit-circle verdict
/// (stable iff max modulus < 1 - margin; a tie at 1 is unstable).
StabilityReport assess(const DiscreteTf& plant, const GpcSynthesis& syn, double margin = 0.0);

/// Smallest P in [1, p_max] whose closed loop is stable, scanning upward.
/// Throws NoStableHorizon when none qualifies.
int min_horizon(const ConverterParams& params, double lambda_weight, int p_max,
                Discretization method, double margin = 0.0);

/// One record per Cartesian grid point, each independently synthesized and
/// assessed; per-point failures are recorded in the row, not thrown.
std::vector<SweepRecord> sweep(const ConverterParams& params, const SweepGrid& grid,
                               Discretization method, double margin = 0.0);

/// min_horizon at the worst-case corner (r_min, vref_max), then verifies
/// stability at that P across all four corners of the ranges; throws
/// CornerDominanceViolated naming any unstable corner.
int robust_horizon(const ConverterParams& params, double r_min, double r_max,
                   double vref_min, double vref_max, double lambda_weight, int p_max,
                   Discretization method, double margin = 0.0);

}  // namespace gpckit
