#include "ridgecast/temporal.hpp"

#include <algorithm>
#include <sstream>

#include "ridgecast/errors.hpp"
#include "ridgecast/rng.hpp"

namespace ridgecast {

SplitPlan make_split_plan(std::size_t n, double initial_fraction, double test_fraction, std::uint64_t seed) {
    if (n < 2) {
        throw Error(ErrorCode::TooFewRows, "split plan needs at least 2 rows, got " + std::to_string(n));
    }
    if (!(initial_fraction > 0.0 && initial_fraction < 1.0) || !(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "fractions must lie in the open interval (0, 1)");
    }

    SplitPlan plan;
    plan.initial_train_count = static_cast<std::size_t>(initial_fraction * static_cast<double>(n));
    plan.stream.reserve(n - plan.initial_train_count);

    Rng rng(seed);
    bool any_test = false;
    for (std::size_t i = plan.initial_train_count; i < n; ++i) {
        const bool test = rng.next_double() < test_fraction;
        plan.stream.push_back(test ? StreamRole::Test : StreamRole::Train);
        any_test = any_test || test;
    }
    if (!any_test) {
        throw Error(ErrorCode::DegenerateSplit, "seed " + std::to_string(seed) + " assigned no test rows");
    }
    return plan;
}

std::vector<std::size_t> admissible_training_rows(const TimeSeriesDataset& ds, const SplitPlan& plan,
                                                  Timestamp t) {
    if (ds.row_count() != plan.row_count()) {
        throw Error(ErrorCode::DimensionMismatch, "plan covers " + std::to_string(plan.row_count()) +
                                                      " rows, dataset has " + std::to_string(ds.row_count()));
    }
    bool known = false;
    for (std::size_t i = plan.initial_train_count; i < ds.row_count() && !known; ++i) {
        known = plan.stream_role(i) == StreamRole::Test && ds.timestamps[i] == t;
    }
    if (!known) {
        throw Error(ErrorCode::UnknownTestTimestamp, "'" + t.to_string() + "' is not a test-row timestamp");
    }

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < ds.row_count(); ++i) {
        if (!(ds.timestamps[i] < t)) continue;
        if (plan.is_initial(i) || plan.stream_role(i) == StreamRole::Train) rows.push_back(i);
    }
    return rows;
}

CvPlan make_cv_plan(std::size_t n, std::size_t k) {
    if (k < 2) {
        throw Error(ErrorCode::InvalidArgument, "fold count must be at least 2");
    }
    if (n < 2 * k) {
        throw Error(ErrorCode::TooFewRows,
                    std::to_string(n) + " rows is too few for k=" + std::to_string(k) + " (need at least 2k)");
    }
    const std::size_t block = n / k;
    CvPlan plan;
    plan.folds.reserve(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        CvFold fold;
        fold.train_end = (i + 1) * block;
        fold.validation_begin = fold.train_end;
        fold.validation_end = (i + 2 == k) ? n : (i + 2) * block;
        plan.folds.push_back(fold);
    }
    return plan;
}

std::vector<ScheduleEvent> prequential_schedule(const TimeSeriesDataset& ds, const SplitPlan& plan) {
    if (ds.row_count() != plan.row_count()) {
        throw Error(ErrorCode::DimensionMismatch, "plan covers " + std::to_string(plan.row_count()) +
                                                      " rows, dataset has " + std::to_string(ds.row_count()));
    }
    std::vector<ScheduleEvent> events;
    events.reserve(ds.row_count());
    for (std::size_t i = 0; i < ds.row_count(); ++i) {
        const bool predict = !plan.is_initial(i) && plan.stream_role(i) == StreamRole::Test;
        events.push_back({predict ? EventKind::Predict : EventKind::Retrain, i});
    }
    // Rows are already in timestamp order; within a tie group predictions must
    // run before co-timestamped retrains.
    std::stable_sort(events.begin(), events.end(), [&](const ScheduleEvent& a, const ScheduleEvent& b) {
        const Timestamp ta = ds.timestamps[a.row];
        const Timestamp tb = ds.timestamps[b.row];
        if (ta != tb) return ta < tb;
        return a.kind == EventKind::Predict && b.kind == EventKind::Retrain;
    });
    return events;
}

std::string export_split_plan(const SplitPlan& plan) {
    std::ostringstream out;
    out << "row_index,role\n";
    for (std::size_t i = 0; i < plan.row_count(); ++i) {
        const char* role = plan.is_initial(i)
                               ? "INITIAL"
                               : (plan.stream_role(i) == StreamRole::Train ? "TRAIN" : "TEST");
        out << i << ',' << role << '\n';
    }
    return out.str();
}

SplitPlan import_split_plan(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != "row_index,role") {
        throw Error(ErrorCode::CorruptFile, "split plan must start with 'row_index,role'");
    }
    SplitPlan plan;
    std::size_t expected = 0;
    bool in_initial = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::CorruptFile, "bad split plan line '" + line + "'");
        }
        const std::size_t index = std::stoull(line.substr(0, comma));
        const std::string role = line.substr(comma + 1);
        if (index != expected) {
            throw Error(ErrorCode::CorruptFile, "split plan rows must be consecutive from 0");
        }
        ++expected;
        if (role == "INITIAL") {
            if (!in_initial) {
                throw Error(ErrorCode::CorruptFile, "INITIAL rows must form a prefix");
            }
            ++plan.initial_train_count;
        } else if (role == "TRAIN" || role == "TEST") {
            in_initial = false;
            plan.stream.push_back(role == "TRAIN" ? StreamRole::Train : StreamRole::Test);
        } else {
            throw Error(ErrorCode::CorruptFile, "unknown role '" + role + "'");
        }
    }
    if (plan.row_count() == 0) {
        throw Error(ErrorCode::CorruptFile, "split plan has no rows");
    }
    return plan;
}

} // namespace ridgecast
