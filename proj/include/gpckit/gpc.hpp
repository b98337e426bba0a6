#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gpckit/polynomial.hpp"
#include "gpckit/transfer.hpp"

namespace gpckit {

struct GpcConfig {
    int horizon_p = 1;          // prediction horizon P
    int horizon_nu = 1;         // control horizon N_u
    double lambda_weight = 0.0; // control-increment weight
    double delta_weight = 1.0;  // output-error weight
    int delay_d = 0;            // plant transport delay in samples

    void validate() const;
};

/// E_j, F_j solving 1 = E_j*Atilde + z^-j F_j for j = 1..P.
struct DiophantineTable {
    std::vector<Polynomial> e;  // e[j-1] = E_j, degree j-1
    std::vector<Polynomial> f;  // f[j-1] = F_j, degree deg(Atilde)-1
};

/// Synthesized predictive controller: gain row, prediction polynomials and
/// the configuration/plant that produced them.
struct GpcSynthesis {
    Eigen::RowVectorXd k_row;              // length P
    std::vector<Polynomial> f_polys;       // F_j, j = 1..P
    std::vector<Polynomial> gprime_polys;  // past-input polynomial per row
    Eigen::MatrixXd g_matrix;              // P x N_u lower-triangular Toeplitz
    std::vector<double> g;                 // step coefficients g_0..g_{P-1}
    GpcConfig config;
    DiscreteTf plant;
    Polynomial b_model;                    // CARIMA numerator acting on u(k-1)
    Polynomial a_tilde;                    // Delta * a
    bool extra_model_delay = false;        // biproper numerator shifted by one sample
};

/// Controller memory between samples. y_history holds the newest sample
/// first (current y after a step); du_history holds du(k-1), du(k-2), ...
struct ControllerState {
    double u_prev = 0.0;
    std::vector<double> du_history;
    std::vector<double> y_history;
};

/// CARIMA numerator for a discrete plant: y(k) = (b_model/a) u(k-1).
/// Strictly proper numerators (b0 = 0) shift exactly; biproper ones are used
/// as-is at the cost of one extra sample of model delay (flag reported).
std::pair<Polynomial, bool> carima_numerator(const DiscreteTf& plant);

/// Recursive solution of the Diophantine identity. a_tilde must be monic
/// (throws NotMonic otherwise).
DiophantineTable diophantine(const Polynomial& a_tilde, int p_horizon);

/// Builds the prediction matrices (g_matrix, gprime rows, F rows) from
/// G_j = E_j * B; k_row is left empty. Throws DimensionMismatch if the table
/// is shorter than the horizon.
GpcSynthesis prediction_matrices(const DiscreteTf& plant, const DiophantineTable& table,
                                 const GpcConfig& cfg);

/// Fills k_row = first row of (delta G^T G + lambda I)^-1 delta G^T.
/// Throws SingularNormalMatrix when the normal matrix is not invertible.
GpcSynthesis& gain(GpcSynthesis& syn);

/// diophantine + prediction_matrices + gain in one call.
GpcSynthesis synthesize(const DiscreteTf& plant, const GpcConfig& cfg);

/// Controller state resting at output y0 with held input u0.
ControllerState initial_state(const GpcSynthesis& syn, double u0, double y0);

/// One control sample: free response from the histories, du = K (w - f),
/// duty clamped to [duty_min, duty_max]; the clamped increment enters the
/// history (anti-windup). Returns the applied duty and updates st in place.
double control_step(const GpcSynthesis& syn, ControllerState& st, double y_meas,
                    double w_ref, double duty_min, double duty_max);

}  // namespace gpckit
