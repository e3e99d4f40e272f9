#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "ridgecast/ingest.hpp"

namespace ridgecast {

struct RidgeConfig {
    double alpha = 1.0;            // L2 penalty strength; 0 degenerates to OLS
    bool fit_intercept = true;     // intercept is never penalized
    bool incremental_inverse = false; // maintain coefficients by rank-one inverse updates
    double fallback = 0.0;         // prediction for a model that has seen no rows

    bool operator==(const RidgeConfig&) const = default;
};

/// Accumulators from which the ridge solution is exactly recoverable:
/// gram = sum of x xT, moment = sum of x*y, plus first moments and the count.
struct SuffStats {
    Eigen::MatrixXd gram;
    Eigen::VectorXd moment;
    Eigen::VectorXd sum_x;
    double sum_y = 0.0;
    std::uint64_t count = 0;
};

struct PredictResult {
    double value = 0.0;
    bool fallback = false;
};

/// Ridge model over sufficient statistics. absorb_row is O(d^2), solve is
/// O(d^3) and lazy: absorbing marks the state dirty and predict refuses to
/// run until solve() refreshes the coefficients. With
/// config.incremental_inverse set, each absorb after the first solve also
/// refreshes the coefficients in O(d^2) via a Sherman-Morrison update of the
/// normal-equation inverse, and the state stays clean.
class RidgeModelState {
public:
    RidgeModelState(std::size_t dimension, RidgeConfig config);

    /// gram += x xT, moment += x y, first moments and count updated.
    void absorb_row(const Eigen::VectorXd& x, double y);

    /// Closed-form solve of the penalized normal equations on centered
    /// statistics; the intercept is recovered from the means and never
    /// penalized. Exact re-solve, also used to (re)anchor the incremental
    /// inverse.
    void solve();

    PredictResult predict(const Eigen::VectorXd& x) const;

    std::size_t dimension() const { return static_cast<std::size_t>(stats_.gram.rows()); }
    const RidgeConfig& config() const { return config_; }
    const SuffStats& stats() const { return stats_; }
    const Eigen::VectorXd& coefficients() const { return coefficients_; }
    double intercept() const { return intercept_; }
    bool dirty() const { return dirty_; }
    const ScalerStats& scaler() const { return scaler_; }
    void set_scaler(ScalerStats scaler);

    /// Coefficients mapped back through the stored scaler into the units of
    /// the unscaled inputs. Constant (stddev 0) columns get coefficient 0.
    Eigen::VectorXd coefficients_in_input_units() const;
    double intercept_in_input_units() const;

    /// Binary model-state file, CRC-checked; see save format notes in
    /// ridge.cpp. Loading marks a trained state dirty so the first predict
    /// re-solves from the (exactly restored) statistics.
    void save(const std::string& path) const;
    static RidgeModelState load(const std::string& path);

private:
    friend RidgeModelState fit_batch(const Eigen::MatrixXd&, const Eigen::VectorXd&, const RidgeConfig&);

    void check_vector(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd augmented_system() const;
    Eigen::VectorXd augmented_rhs() const;
    void refresh_from_inverse();

    RidgeConfig config_;
    SuffStats stats_;
    Eigen::VectorXd coefficients_;
    double intercept_ = 0.0;
    ScalerStats scaler_;
    bool dirty_ = false;
    std::optional<Eigen::MatrixXd> inverse_; // inverse of the augmented normal system
};

/// Fresh batch fit: builds statistics from the full design matrix in one shot
/// (a different summation route than row-wise absorption) and solves.
RidgeModelState fit_batch(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const RidgeConfig& config);

} // namespace ridgecast
