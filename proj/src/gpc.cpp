#include "gpckit/gpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpckit/errors.hpp"

namespace gpckit {

void GpcConfig::validate() const {
    if (horizon_p < 1) throw std::invalid_argument("GpcConfig: horizon_p must be >= 1");
    if (horizon_nu < 1 || horizon_nu > horizon_p) {
        throw std::invalid_argument("GpcConfig: need 1 <= horizon_nu <= horizon_p");
    }
    if (lambda_weight < 0.0) throw std::invalid_argument("GpcConfig: lambda must be >= 0");
    if (!(delta_weight > 0.0)) throw std::invalid_argument("GpcConfig: delta must be > 0");
    if (delay_d < 0) throw std::invalid_argument("GpcConfig: delay_d must be >= 0");
}

std::pair<Polynomial, bool> carima_numerator(const DiscreteTf& plant) {
    const auto& b = plant.b.coeffs();
    if (b.size() > 1 && b[0] == 0.0) {
        return {Polynomial(std::vector<double>(b.begin() + 1, b.end())), false};
    }
    return {plant.b, true};
}

DiophantineTable diophantine(const Polynomial& a_tilde, int p_horizon) {
    if (!a_tilde.is_monic()) {
        throw NotMonic("diophantine: a_tilde must be monic");
    }
    if (p_horizon < 1) throw std::invalid_argument("diophantine: p_horizon must be >= 1");

    const int na = a_tilde.degree();  // F_j has degree na - 1
    DiophantineTable table;
    table.e.reserve(static_cast<std::size_t>(p_horizon));
    table.f.reserve(static_cast<std::size_t>(p_horizon));

    // j = 1: E_1 = 1, F_1 = z (1 - Atilde)
    std::vector<double> e{1.0};
    std::vector<double> f(static_cast<std::size_t>(std::max(na, 1)), 0.0);
    for (int i = 0; i < na; ++i) {
        f[static_cast<std::size_t>(i)] = -a_tilde[static_cast<std::size_t>(i) + 1];
    }
    table.e.push_back(Polynomial::raw(e));
    table.f.push_back(Polynomial::raw(f));

    for (int j = 1; j < p_horizon; ++j) {
        const double f0 = f[0];
        // F_{j+1} = z (F_j - f0 Atilde); one long-division step
        std::vector<double> fn(f.size(), 0.0);
        for (std::size_t i = 0; i + 1 <= f.size(); ++i) {
            const double fi1 = i + 1 < f.size() ? f[i + 1] : 0.0;
            fn[i] = fi1 - f0 * a_tilde[i + 1];
        }
        e.push_back(f0);  // E_{j+1} = E_j + f0 z^-j
        f = std::move(fn);
        table.e.push_back(Polynomial::raw(e));
        table.f.push_back(Polynomial::raw(f));
    }
    return table;
}

GpcSynthesis prediction_matrices(const DiscreteTf& plant, const DiophantineTable& table,
                                 const GpcConfig& cfg) {
    cfg.validate();
    const int P = cfg.horizon_p;
    if (static_cast<int>(table.e.size()) < P || static_cast<int>(table.f.size()) < P) {
        throw DimensionMismatch("prediction_matrices: Diophantine table shorter than horizon");
    }

    GpcSynthesis syn{.k_row = {},
                     .f_polys = {},
                     .gprime_polys = {},
                     .g_matrix = {},
                     .g = {},
                     .config = cfg,
                     .plant = plant,
                     .b_model = Polynomial::one(),
                     .a_tilde = Polynomial::one(),
                     .extra_model_delay = false};

    auto [bm, extra] = carima_numerator(plant);
    if (cfg.delay_d > 0) bm = bm.shifted(cfg.delay_d);  // fold z^-d into B
    syn.b_model = bm;
    syn.extra_model_delay = extra;
    syn.a_tilde = poly_mul(Polynomial::delta(), plant.a);

    syn.f_polys.assign(table.f.begin(), table.f.begin() + P);

    // G_j = E_j B: the first j coefficients are the step coefficients
    // g_0..g_{j-1}; the remainder (from index j) multiplies past increments.
    syn.g.assign(static_cast<std::size_t>(P), 0.0);
    syn.gprime_polys.reserve(static_cast<std::size_t>(P));
    for (int j = 1; j <= P; ++j) {
        const Polynomial gj = poly_mul(table.e[static_cast<std::size_t>(j - 1)], bm);
        if (j == P) {
            for (int i = 0; i < P; ++i) syn.g[static_cast<std::size_t>(i)] = gj[static_cast<std::size_t>(i)];
        }
        std::vector<double> past;
        for (int i = j; i <= gj.degree(); ++i) past.push_back(gj[static_cast<std::size_t>(i)]);
        if (past.empty()) past.push_back(0.0);
        syn.gprime_polys.push_back(Polynomial::raw(std::move(past)));
    }

    syn.g_matrix = Eigen::MatrixXd::Zero(P, cfg.horizon_nu);
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < cfg.horizon_nu; ++j) {
            if (i >= j) syn.g_matrix(i, j) = syn.g[static_cast<std::size_t>(i - j)];
        }
    }
    return syn;
}

GpcSynthesis& gain(GpcSynthesis& syn) {
    const auto& cfg = syn.config;
    const int P = cfg.horizon_p;
    const int nu = cfg.horizon_nu;
    if (syn.g_matrix.rows() != P || syn.g_matrix.cols() != nu) {
        throw DimensionMismatch("gain: g_matrix not populated");
    }

    const Eigen::MatrixXd& G = syn.g_matrix;
    Eigen::MatrixXd M = cfg.delta_weight * (G.transpose() * G) +
                        cfg.lambda_weight * Eigen::MatrixXd::Identity(nu, nu);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) {
        throw SingularNormalMatrix("gain: delta G^T G + lambda I is singular");
    }
    Eigen::MatrixXd X = lu.solve(cfg.delta_weight * G.transpose());  // nu x P
    syn.k_row = X.row(0);
    return syn;
}

GpcSynthesis synthesize(const DiscreteTf& plant, const GpcConfig& cfg) {
    cfg.validate();
    const Polynomial a_tilde = poly_mul(Polynomial::delta(), plant.a);
    const DiophantineTable table = diophantine(a_tilde, cfg.horizon_p);
    GpcSynthesis syn = prediction_matrices(plant, table, cfg);
    gain(syn);
    return syn;
}

ControllerState initial_state(const GpcSynthesis& syn, double u0, double y0) {
    ControllerState st;
    st.u_prev = u0;
    int max_gprime_deg = 0;
    for (const auto& gp : syn.gprime_polys) max_gprime_deg = std::max(max_gprime_deg, gp.degree());
    st.du_history.assign(static_cast<std::size_t>(max_gprime_deg) + 1, 0.0);
    st.y_history.assign(static_cast<std::size_t>(syn.a_tilde.degree()), y0);
    return st;
}

double control_step(const GpcSynthesis& syn, ControllerState& st, double y_meas,
                    double w_ref, double duty_min, double duty_max) {
    // newest measurement first
    st.y_history.insert(st.y_history.begin(), y_meas);
    st.y_history.pop_back();

    const int P = syn.config.horizon_p;
    double du = 0.0;
    for (int j = 0; j < P; ++j) {
        const Polynomial& Fj = syn.f_polys[static_cast<std::size_t>(j)];
        const Polynomial& gpj = syn.gprime_polys[static_cast<std::size_t>(j)];
        double f = 0.0;
        for (int i = 0; i <= Fj.degree(); ++i) {
            f += Fj[static_cast<std::size_t>(i)] * st.y_history[static_cast<std::size_t>(i)];
        }
        for (int m = 0; m <= gpj.degree(); ++m) {
            f += gpj[static_cast<std::size_t>(m)] * st.du_history[static_cast<std::size_t>(m)];
        }
        du += syn.k_row(j) * (w_ref - f);
    }

    const double u = std::clamp(st.u_prev + du, duty_min, duty_max);
    const double du_applied = u - st.u_prev;  // anti-windup: store the clamped increment
    st.du_history.insert(st.du_history.begin(), du_applied);
    st.du_history.pop_back();
    st.u_prev = u;
    return u;
}

}  // namespace gpckit
