#include "ridgecast/ingest.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "ridgecast/csv.hpp"

namespace ridgecast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

ColumnKind parse_kind(const std::string& word, const std::string& path) {
    const std::string k = to_lower(word);
    if (k == "numeric") return ColumnKind::Numeric;
    if (k == "categorical") return ColumnKind::Categorical;
    if (k == "target") return ColumnKind::Target;
    if (k == "timestamp") return ColumnKind::Timestamp;
    throw Error(ErrorCode::SchemaMismatch, "unknown column kind '" + word + "' in " + path);
}

void check_schema(const std::vector<ColumnSpec>& schema) {
    std::size_t timestamps = 0, targets = 0, categoricals = 0;
    for (const auto& col : schema) {
        if (col.kind == ColumnKind::Timestamp) ++timestamps;
        if (col.kind == ColumnKind::Target) ++targets;
        if (col.kind == ColumnKind::Categorical) ++categoricals;
    }
    if (timestamps == 0) throw Error(ErrorCode::NoTimestampColumn, "schema has no timestamp column");
    if (timestamps > 1) throw Error(ErrorCode::SchemaMismatch, "schema has more than one timestamp column");
    if (targets != 1) throw Error(ErrorCode::SchemaMismatch, "schema must have exactly one target column");
    if (categoricals > 1) throw Error(ErrorCode::SchemaMismatch, "at most one categorical column is supported");
}

} // namespace

std::vector<ColumnSpec> parse_schema_file(const std::string& path) {
    std::vector<ColumnSpec> schema;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 2) {
            throw Error(ErrorCode::SchemaMismatch, "expected 'name,kind' in " + path + ", got '" + line + "'");
        }
        schema.push_back({cells[0], parse_kind(cells[1], path)});
    }
    check_schema(schema);
    return schema;
}

std::vector<ColumnSpec> infer_schema(const std::vector<std::string>& header) {
    std::vector<ColumnSpec> schema;
    schema.reserve(header.size());
    for (const auto& name : header) {
        const std::string lower = to_lower(name);
        ColumnKind kind = ColumnKind::Numeric;
        if (lower == "timestamp") kind = ColumnKind::Timestamp;
        else if (lower == "target") kind = ColumnKind::Target;
        schema.push_back({name, kind});
    }
    check_schema(schema);
    return schema;
}

TimeSeriesDataset load_csv(const std::string& path, const std::vector<ColumnSpec>& schema,
                           const LoadOptions& options) {
    check_schema(schema);
    const auto lines = read_lines(path);
    if (lines.empty()) {
        throw Error(ErrorCode::SchemaMismatch, "'" + path + "' has no header row");
    }

    const auto header = split_csv_line(lines[0]);
    if (header.size() != schema.size()) {
        throw Error(ErrorCode::SchemaMismatch,
                    "'" + path + "' header has " + std::to_string(header.size()) + " columns, schema expects " +
                        std::to_string(schema.size()));
    }
    for (std::size_t j = 0; j < schema.size(); ++j) {
        if (header[j] != schema[j].name) {
            throw Error(ErrorCode::SchemaMismatch,
                        "'" + path + "' header column " + std::to_string(j) + " is '" + header[j] +
                            "', schema expects '" + schema[j].name + "'");
        }
    }

    std::size_t ts_col = 0, target_col = 0;
    std::vector<std::size_t> feature_cols; // schema indices that land in the feature matrix
    std::vector<std::size_t> cat_feature_slots;
    for (std::size_t j = 0; j < schema.size(); ++j) {
        switch (schema[j].kind) {
            case ColumnKind::Timestamp: ts_col = j; break;
            case ColumnKind::Target: target_col = j; break;
            case ColumnKind::Numeric: feature_cols.push_back(j); break;
            case ColumnKind::Categorical:
                if (options.encode_categorical) {
                    cat_feature_slots.push_back(feature_cols.size());
                    feature_cols.push_back(j);
                }
                break;
        }
    }

    struct RawRow {
        Timestamp ts;
        std::vector<std::optional<double>> features;
        std::optional<double> target;
        std::optional<std::int32_t> code;
    };

    std::vector<RawRow> raw;
    std::vector<std::string> category_labels;
    bool has_categorical = false;
    std::size_t cat_col = 0;
    for (std::size_t j = 0; j < schema.size(); ++j) {
        if (schema[j].kind == ColumnKind::Categorical) {
            has_categorical = true;
            cat_col = j;
        }
    }

    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto cells = split_csv_line(lines[li]);
        if (cells.size() != schema.size()) {
            throw Error(ErrorCode::SchemaMismatch,
                        "'" + path + "' row " + std::to_string(li) + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(schema.size()));
        }
        RawRow row;
        row.ts = Timestamp::parse(cells[ts_col]);
        row.target = parse_cell(cells[target_col]);
        if (has_categorical && !cells[cat_col].empty()) {
            const auto& label = cells[cat_col];
            auto it = std::find(category_labels.begin(), category_labels.end(), label);
            if (it == category_labels.end()) {
                category_labels.push_back(label);
                row.code = static_cast<std::int32_t>(category_labels.size() - 1);
            } else {
                row.code = static_cast<std::int32_t>(it - category_labels.begin());
            }
        }
        row.features.resize(feature_cols.size());
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const std::size_t j = feature_cols[f];
            if (schema[j].kind == ColumnKind::Categorical) {
                if (row.code) row.features[f] = static_cast<double>(*row.code);
            } else {
                row.features[f] = parse_cell(cells[j]);
            }
        }
        raw.push_back(std::move(row));
    }

    // Stable sort keeps file order for equal timestamps.
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a].ts < raw[b].ts; });

    TimeSeriesDataset ds;
    ds.columns = schema;
    ds.category_labels = std::move(category_labels);
    for (std::size_t j : feature_cols) ds.feature_names.push_back(schema[j].name);

    const auto n = static_cast<Eigen::Index>(raw.size());
    const auto d = static_cast<Eigen::Index>(feature_cols.size());
    ds.timestamps.reserve(raw.size());
    ds.feature_values.setConstant(n, d, kNaN);
    ds.feature_mask.setZero(n, d);
    ds.target_values.setConstant(n, kNaN);
    ds.target_mask.assign(raw.size(), 0);
    if (has_categorical) ds.categorical.reserve(raw.size());

    for (Eigen::Index i = 0; i < n; ++i) {
        const RawRow& row = raw[order[static_cast<std::size_t>(i)]];
        ds.timestamps.push_back(row.ts);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (const auto& v = row.features[static_cast<std::size_t>(j)]) {
                ds.feature_values(i, j) = *v;
                ds.feature_mask(i, j) = 1;
            }
        }
        if (row.target) {
            ds.target_values(i) = *row.target;
            ds.target_mask[static_cast<std::size_t>(i)] = 1;
        }
        if (has_categorical) ds.categorical.push_back(row.code);
    }
    return ds;
}

ImputationPlan fit_imputation(const TimeSeriesDataset& ds, std::span<const std::size_t> fit_rows) {
    return detail::fit_imputation_impl(
        [&](std::size_t r, std::size_t c) { return ds.feature(r, c); }, fit_rows, ds.feature_count(),
        ds.feature_names);
}

TimeSeriesDataset apply_imputation(const TimeSeriesDataset& ds, const ImputationPlan& plan) {
    TimeSeriesDataset out = ds;
    for (Eigen::Index j = 0; j < out.feature_values.cols(); ++j) {
        bool column_has_missing = false;
        for (Eigen::Index i = 0; i < out.feature_values.rows(); ++i) {
            if (!out.feature_mask(i, j)) {
                column_has_missing = true;
                break;
            }
        }
        if (!column_has_missing) continue;
        if (static_cast<std::size_t>(j) >= plan.modes.size()) {
            throw Error(ErrorCode::UncoveredColumn,
                        "column '" + ds.feature_names[static_cast<std::size_t>(j)] +
                            "' has missing values but no imputation mode");
        }
        for (Eigen::Index i = 0; i < out.feature_values.rows(); ++i) {
            if (!out.feature_mask(i, j)) {
                out.feature_values(i, j) = plan.modes[static_cast<std::size_t>(j)];
                out.feature_mask(i, j) = 1;
            }
        }
    }
    return out;
}

ScalerStats fit_scaler(const TimeSeriesDataset& ds, std::span<const std::size_t> fit_rows) {
    return detail::fit_scaler_impl([&](std::size_t r, std::size_t c) { return ds.feature(r, c); }, fit_rows,
                                   ds.feature_count());
}

TimeSeriesDataset apply_scaler(const TimeSeriesDataset& ds, const ScalerStats& stats) {
    if (stats.mean.size() != static_cast<Eigen::Index>(ds.feature_count())) {
        throw Error(ErrorCode::DimensionMismatch,
                    "scaler has " + std::to_string(stats.mean.size()) + " columns, dataset has " +
                        std::to_string(ds.feature_count()));
    }
    TimeSeriesDataset out = ds;
    for (Eigen::Index j = 0; j < out.feature_values.cols(); ++j) {
        const double mean = stats.mean(j);
        const double sd = stats.stddev(j);
        for (Eigen::Index i = 0; i < out.feature_values.rows(); ++i) {
            if (!out.feature_mask(i, j)) continue;
            out.feature_values(i, j) = sd == 0.0 ? 0.0 : (out.feature_values(i, j) - mean) / sd;
        }
    }
    return out;
}

Eigen::VectorXd impute_row(const TimeSeriesDataset& ds, std::size_t row, const ImputationPlan& plan) {
    const auto d = static_cast<Eigen::Index>(ds.feature_count());
    Eigen::VectorXd x(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        if (ds.feature_present(row, static_cast<std::size_t>(j))) {
            x(j) = ds.feature_values(static_cast<Eigen::Index>(row), j);
        } else {
            if (static_cast<std::size_t>(j) >= plan.modes.size()) {
                throw Error(ErrorCode::UncoveredColumn,
                            "column '" + ds.feature_names[static_cast<std::size_t>(j)] +
                                "' has a missing value but no imputation mode");
            }
            x(j) = plan.modes[static_cast<std::size_t>(j)];
        }
    }
    return x;
}

Eigen::VectorXd scale_vector(const Eigen::VectorXd& x, const ScalerStats& stats) {
    if (x.size() != stats.mean.size()) {
        throw Error(ErrorCode::DimensionMismatch, "vector width does not match scaler");
    }
    Eigen::VectorXd out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        out(j) = stats.stddev(j) == 0.0 ? 0.0 : (x(j) - stats.mean(j)) / stats.stddev(j);
    }
    return out;
}

std::vector<MissingnessRow> missingness_report(const TimeSeriesDataset& ds) {
    std::vector<MissingnessRow> rows;
    const double n = static_cast<double>(ds.row_count());
    std::size_t feature_slot = 0;
    for (const auto& col : ds.columns) {
        if (col.kind == ColumnKind::Timestamp) continue;
        MissingnessRow row;
        row.column = col.name;
        if (col.kind == ColumnKind::Target) {
            for (auto present : ds.target_mask) {
                if (!present) ++row.missing_count;
            }
        } else if (col.kind == ColumnKind::Categorical &&
                   (feature_slot >= ds.feature_names.size() || ds.feature_names[feature_slot] != col.name)) {
            // Categorical column that was not encoded into the feature matrix.
            for (const auto& code : ds.categorical) {
                if (!code) ++row.missing_count;
            }
        } else {
            for (std::size_t i = 0; i < ds.row_count(); ++i) {
                if (!ds.feature_present(i, feature_slot)) ++row.missing_count;
            }
            ++feature_slot;
        }
        row.missing_fraction = n == 0.0 ? 0.0 : static_cast<double>(row.missing_count) / n;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ridgecast
