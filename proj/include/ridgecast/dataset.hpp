#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ridgecast/timestamp.hpp"

namespace ridgecast {

enum class ColumnKind { Numeric, Categorical, Target, Timestamp };

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;

    bool operator==(const ColumnSpec&) const = default;
};

/// Ordered timestamped observations. Feature cells may be absent; presence is
/// tracked by an explicit mask, never by a sentinel value. Rows are kept
/// sorted by timestamp (ascending) from ingest onward. Immutable by
/// convention after construction.
class TimeSeriesDataset {
public:
    std::vector<ColumnSpec> columns;          // original schema, file order
    std::vector<Timestamp> timestamps;        // length n
    std::vector<std::string> feature_names;   // length d
    Eigen::MatrixXd feature_values;           // n x d; absent cells hold NaN
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> feature_mask; // 1 = present
    Eigen::VectorXd target_values;            // length n
    std::vector<std::uint8_t> target_mask;    // 1 = present
    std::vector<std::optional<std::int32_t>> categorical; // raw codes, empty if no categorical column
    std::vector<std::string> category_labels; // code -> original string

    std::size_t row_count() const { return timestamps.size(); }
    std::size_t feature_count() const { return feature_names.size(); }

    bool feature_present(std::size_t row, std::size_t col) const {
        return feature_mask(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) != 0;
    }

    std::optional<double> feature(std::size_t row, std::size_t col) const {
        if (!feature_present(row, col)) return std::nullopt;
        return feature_values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    std::optional<double> target(std::size_t row) const {
        if (!target_mask[row]) return std::nullopt;
        return target_values(static_cast<Eigen::Index>(row));
    }

    bool has_missing_features() const;

    bool operator==(const TimeSeriesDataset& other) const;
};

struct PredictionRecord {
    Timestamp timestamp;
    double raw = 0.0;
    double quantized = 0.0;          // non-negative integer multiple of 5
    std::optional<double> truth;
    bool fallback = false;           // prediction came from an empty model
};

/// Returns the sub-dataset at the given row indices. Indices are treated as a
/// set: they are deduplicated and applied in ascending order, so the result
/// preserves the relative row order of the input. Column metadata is carried
/// over unchanged.
TimeSeriesDataset dataset_slice(const TimeSeriesDataset& ds, std::span<const std::size_t> row_indices);

} // namespace ridgecast
