#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ridgecast/dataset.hpp"
#include "ridgecast/errors.hpp"

namespace ridgecast {

/// Per-column most-frequent-value replacements, fit on a designated row set.
struct ImputationPlan {
    std::vector<double> modes; // length = feature width of the fitting data

    bool operator==(const ImputationPlan&) const = default;
};

/// Per-column mean and population standard deviation. A stddev of 0 flags a
/// constant column; apply_scaler maps such columns to all zeros.
struct ScalerStats {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
};

struct LoadOptions {
    bool encode_categorical = true; // append categorical code columns to the feature matrix
};

/// Loads a CSV into a TimeSeriesDataset. The header must match the schema
/// names in order; rows come out sorted by timestamp (stable for ties).
/// Empty or unparseable numeric cells become missing.
TimeSeriesDataset load_csv(const std::string& path, const std::vector<ColumnSpec>& schema,
                           const LoadOptions& options = {});

/// Schema file: one "name,kind" line per column, kind in
/// {numeric, categorical, target, timestamp}.
std::vector<ColumnSpec> parse_schema_file(const std::string& path);

/// Fallback when no schema file is given: a column named "timestamp" is the
/// timestamp, "target" is the target, everything else is numeric.
std::vector<ColumnSpec> infer_schema(const std::vector<std::string>& header);

namespace detail {

// Fitting is written against a cell getter so tests can instrument exactly
// which rows are read. Getter: (row, col) -> std::optional<double>.
template <typename Getter>
ImputationPlan fit_imputation_impl(Getter&& cell, std::span<const std::size_t> fit_rows,
                                   std::size_t width, const std::vector<std::string>& names) {
    if (fit_rows.empty()) {
        throw Error(ErrorCode::EmptyFitSet, "imputation requires a nonempty fit set");
    }
    ImputationPlan plan;
    plan.modes.resize(width);
    std::vector<double> values;
    for (std::size_t j = 0; j < width; ++j) {
        values.clear();
        for (std::size_t r : fit_rows) {
            if (auto v = cell(r, j)) values.push_back(*v);
        }
        if (values.empty()) {
            throw Error(ErrorCode::AllMissingColumn,
                        "column '" + (j < names.size() ? names[j] : std::to_string(j)) +
                            "' has no present value in the fit rows");
        }
        // Mode on exact value equality; ties broken by smallest value.
        std::sort(values.begin(), values.end());
        double best = values[0];
        std::size_t best_count = 0;
        std::size_t i = 0;
        while (i < values.size()) {
            std::size_t run = 1;
            while (i + run < values.size() && values[i + run] == values[i]) ++run;
            if (run > best_count) {
                best_count = run;
                best = values[i];
            }
            i += run;
        }
        plan.modes[j] = best;
    }
    return plan;
}

template <typename Getter>
ScalerStats fit_scaler_impl(Getter&& cell, std::span<const std::size_t> fit_rows, std::size_t width) {
    if (fit_rows.empty()) {
        throw Error(ErrorCode::EmptyFitSet, "scaler requires a nonempty fit set");
    }
    ScalerStats stats;
    stats.mean.setZero(static_cast<Eigen::Index>(width));
    stats.stddev.setZero(static_cast<Eigen::Index>(width));
    const double n = static_cast<double>(fit_rows.size());
    for (std::size_t j = 0; j < width; ++j) {
        double sum = 0.0;
        for (std::size_t r : fit_rows) {
            auto v = cell(r, j);
            if (!v) {
                throw Error(ErrorCode::NonFiniteInput,
                            "scaler fit requires imputed data; missing cell at row " + std::to_string(r));
            }
            sum += *v;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t r : fit_rows) {
            const double e = *cell(r, j) - mean;
            ss += e * e;
        }
        stats.mean(static_cast<Eigen::Index>(j)) = mean;
        stats.stddev(static_cast<Eigen::Index>(j)) = std::sqrt(ss / n);
    }
    return stats;
}

} // namespace detail

/// Per-column mode of the present values among fit_rows.
ImputationPlan fit_imputation(const TimeSeriesDataset& ds, std::span<const std::size_t> fit_rows);

/// Fills every missing feature cell from the plan; present values unchanged.
TimeSeriesDataset apply_imputation(const TimeSeriesDataset& ds, const ImputationPlan& plan);

/// Per-column mean and population stddev over fit_rows (which must be fully
/// imputed).
ScalerStats fit_scaler(const TimeSeriesDataset& ds, std::span<const std::size_t> fit_rows);

/// Maps each cell to (x - mean) / stddev; constant columns (stddev 0) become
/// all zeros.
TimeSeriesDataset apply_scaler(const TimeSeriesDataset& ds, const ScalerStats& stats);

/// Row-level counterparts used on incoming prediction rows.
Eigen::VectorXd impute_row(const TimeSeriesDataset& ds, std::size_t row, const ImputationPlan& plan);
Eigen::VectorXd scale_vector(const Eigen::VectorXd& x, const ScalerStats& stats);

struct MissingnessRow {
    std::string column;
    std::size_t missing_count = 0;
    double missing_fraction = 0.0;
};

/// Per-column missing counts over every non-timestamp column, in schema order.
std::vector<MissingnessRow> missingness_report(const TimeSeriesDataset& ds);

} // namespace ridgecast
