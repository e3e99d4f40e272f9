#include "ridgecast/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "ridgecast/errors.hpp"

namespace ridgecast {

namespace {

// NaN-tolerant cell comparison: two absent cells are equal regardless of the
// stored placeholder value.
bool features_equal(const TimeSeriesDataset& a, const TimeSeriesDataset& b) {
    if (a.feature_values.rows() != b.feature_values.rows() ||
        a.feature_values.cols() != b.feature_values.cols()) {
        return false;
    }
    for (Eigen::Index i = 0; i < a.feature_values.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.feature_values.cols(); ++j) {
            if (a.feature_mask(i, j) != b.feature_mask(i, j)) return false;
            if (a.feature_mask(i, j) && a.feature_values(i, j) != b.feature_values(i, j)) return false;
        }
    }
    return true;
}

} // namespace

bool TimeSeriesDataset::has_missing_features() const {
    for (Eigen::Index i = 0; i < feature_mask.rows(); ++i) {
        for (Eigen::Index j = 0; j < feature_mask.cols(); ++j) {
            if (!feature_mask(i, j)) return true;
        }
    }
    return false;
}

bool TimeSeriesDataset::operator==(const TimeSeriesDataset& other) const {
    if (columns != other.columns || timestamps != other.timestamps ||
        feature_names != other.feature_names || categorical != other.categorical ||
        category_labels != other.category_labels || target_mask != other.target_mask) {
        return false;
    }
    for (std::size_t i = 0; i < row_count(); ++i) {
        if (target_mask[i] && target_values(static_cast<Eigen::Index>(i)) !=
                                  other.target_values(static_cast<Eigen::Index>(i))) {
            return false;
        }
    }
    return features_equal(*this, other);
}

TimeSeriesDataset dataset_slice(const TimeSeriesDataset& ds, std::span<const std::size_t> row_indices) {
    std::vector<std::size_t> rows(row_indices.begin(), row_indices.end());
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    const std::size_t n = ds.row_count();
    for (std::size_t r : rows) {
        if (r >= n) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "row " + std::to_string(r) + " out of range for dataset of " + std::to_string(n) + " rows");
        }
    }

    TimeSeriesDataset out;
    out.columns = ds.columns;
    out.feature_names = ds.feature_names;
    out.category_labels = ds.category_labels;

    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(ds.feature_count());
    out.timestamps.reserve(rows.size());
    out.feature_values.resize(m, d);
    out.feature_mask.resize(m, d);
    out.target_values.resize(m);
    out.target_mask.resize(rows.size());
    if (!ds.categorical.empty()) out.categorical.reserve(rows.size());

    for (Eigen::Index i = 0; i < m; ++i) {
        const auto src = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
        out.timestamps.push_back(ds.timestamps[static_cast<std::size_t>(src)]);
        out.feature_values.row(i) = ds.feature_values.row(src);
        out.feature_mask.row(i) = ds.feature_mask.row(src);
        out.target_values(i) = ds.target_values(src);
        out.target_mask[static_cast<std::size_t>(i)] = ds.target_mask[static_cast<std::size_t>(src)];
        if (!ds.categorical.empty()) out.categorical.push_back(ds.categorical[static_cast<std::size_t>(src)]);
    }
    return out;
}

} // namespace ridgecast
