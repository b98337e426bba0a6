#include "gpckit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "gpckit/errors.hpp"
#include "gpckit/roots.hpp"

namespace gpckit {

Polynomial closed_loop_charpoly(const DiscreteTf& plant, const GpcSynthesis& syn) {
    const int P = syn.config.horizon_p;
    if (syn.k_row.size() != P) {
        throw DimensionMismatch("closed_loop_charpoly: synthesis has no gain row");
    }
    if (!(plant.a == syn.plant.a) || !(plant.b == syn.plant.b)) {
        throw DimensionMismatch("closed_loop_charpoly: synthesis was built from a different plant");
    }

    // W = sum_j k_j gprime_j ; S = sum_j k_j F_j
    std::size_t wlen = 1, slen = 1;
    for (const auto& gp : syn.gprime_polys) wlen = std::max(wlen, gp.size());
    for (const auto& fp : syn.f_polys) slen = std::max(slen, fp.size());
    std::vector<double> w(wlen, 0.0), s(slen, 0.0);
    for (int j = 0; j < P; ++j) {
        const double k = syn.k_row(j);
        const auto& gp = syn.gprime_polys[static_cast<std::size_t>(j)].coeffs();
        const auto& fp = syn.f_polys[static_cast<std::size_t>(j)].coeffs();
        for (std::size_t i = 0; i < gp.size(); ++i) w[i] += k * gp[i];
        for (std::size_t i = 0; i < fp.size(); ++i) s[i] += k * fp[i];
    }

    // R = 1 + z^-1 W
    std::vector<double> rpoly(wlen + 1, 0.0);
    rpoly[0] = 1.0;
    for (std::size_t i = 0; i < wlen; ++i) rpoly[i + 1] = w[i];

    const std::vector<double> t1 = conv(syn.a_tilde.coeffs(), rpoly);
    std::vector<double> t2 = conv(syn.b_model.coeffs(), s);
    t2.insert(t2.begin(), 0.0);  // z^-1 B S

    std::vector<double> d(std::max(t1.size(), t2.size()), 0.0);
    for (std::size_t i = 0; i < t1.size(); ++i) d[i] += t1[i];
    for (std::size_t i = 0; i < t2.size(); ++i) d[i] += t2[i];
    return Polynomial::raw(std::move(d));
}

StabilityReport assess(const DiscreteTf& plant, const GpcSynthesis& syn, double margin) {
    if (margin < 0.0) throw std::invalid_argument("assess: margin must be >= 0");
    StabilityReport rep;
    rep.margin = margin;
    rep.char_poly = closed_loop_charpoly(plant, syn);
    rep.poles = poly_roots(rep.char_poly);
    rep.max_modulus = 0.0;
    for (const auto& p : rep.poles) rep.max_modulus = std::max(rep.max_modulus, std::abs(p));
    rep.stable = rep.max_modulus < 1.0 - margin;
    return rep;
}

int min_horizon(const ConverterParams& params, double lambda_weight, int p_max,
                Discretization method, double margin) {
    if (p_max < 1) throw std::invalid_argument("min_horizon: p_max must be >= 1");
    params.validate();
    const DiscreteTf plant = discrete_plant(params, method);
    for (int P = 1; P <= p_max; ++P) {
        GpcConfig cfg{.horizon_p = P, .horizon_nu = 1, .lambda_weight = lambda_weight};
        const GpcSynthesis syn = synthesize(plant, cfg);
        if (assess(plant, syn, margin).stable) return P;
    }
    throw NoStableHorizon("min_horizon: no stable horizon up to P = " + std::to_string(p_max));
}

std::vector<SweepRecord> sweep(const ConverterParams& params, const SweepGrid& grid,
                               Discretization method, double margin) {
    if (grid.horizons.empty() || grid.lambdas.empty() || grid.loads.empty() ||
        grid.vrefs.empty()) {
        throw std::invalid_argument("sweep: every grid axis needs at least one point");
    }
    std::vector<SweepRecord> records;
    records.reserve(grid.horizons.size() * grid.lambdas.size() * grid.loads.size() *
                    grid.vrefs.size());
    for (int P : grid.horizons) {
        for (double lam : grid.lambdas) {
            for (double r : grid.loads) {
                for (double vref : grid.vrefs) {
                    SweepRecord rec;
                    rec.horizon_p = P;
                    rec.lambda_weight = lam;
                    rec.r = r;
                    rec.vo_ref = vref;
                    try {
                        ConverterParams pp = params;
                        pp.r = r;
                        pp.vo_ref = vref;
                        pp.validate();
                        const DiscreteTf plant = discrete_plant(pp, method);
                        GpcConfig cfg{.horizon_p = P, .horizon_nu = 1, .lambda_weight = lam};
                        const GpcSynthesis syn = synthesize(plant, cfg);
                        const StabilityReport rep = assess(plant, syn, margin);
                        rec.max_modulus = rep.max_modulus;
                        rec.stable = rep.stable;
                        rec.poles = rep.poles;
                    } catch (const std::exception& e) {
                        rec.error = e.what();
                    }
                    records.push_back(std::move(rec));
                }
            }
        }
    }
    return records;
}

int robust_horizon(const ConverterParams& params, double r_min, double r_max,
                   double vref_min, double vref_max, double lambda_weight, int p_max,
                   Discretization method, double margin) {
    if (!(r_min <= r_max) || !(vref_min <= vref_max)) {
        throw std::invalid_argument("robust_horizon: empty parameter interval");
    }
    ConverterParams worst = params;
    worst.r = r_min;
    worst.vo_ref = vref_max;
    const int P = min_horizon(worst, lambda_weight, p_max, method, margin);

    for (double r : {r_min, r_max}) {
        for (double vref : {vref_min, vref_max}) {
            ConverterParams corner = params;
            corner.r = r;
            corner.vo_ref = vref;
            corner.validate();
            const DiscreteTf plant = discrete_plant(corner, method);
            GpcConfig cfg{.horizon_p = P, .horizon_nu = 1, .lambda_weight = lambda_weight};
            const GpcSynthesis syn = synthesize(plant, cfg);
            if (!assess(plant, syn, margin).stable) {
                throw CornerDominanceViolated(
                    "robust_horizon: corner R=" + std::to_string(r) + " vref=" +
                    std::to_string(vref) + " is unstable at P = " + std::to_string(P));
            }
        }
    }
    return P;
}

}  // namespace gpckit
