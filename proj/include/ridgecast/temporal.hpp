#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ridgecast/dataset.hpp"

namespace ridgecast {

enum class StreamRole { Train, Test };

/// Deterministic assignment of every row to one of three roles: the initial
/// training prefix, streamed training rows, or test rows. Rows are identified
/// by their position in the time-sorted dataset.
struct SplitPlan {
    std::size_t initial_train_count = 0; // rows [0, initial_train_count) are the initial window
    std::vector<StreamRole> stream;      // roles of rows [initial_train_count, n), in time order

    std::size_t row_count() const { return initial_train_count + stream.size(); }

    bool is_initial(std::size_t row) const { return row < initial_train_count; }
    StreamRole stream_role(std::size_t row) const { return stream[row - initial_train_count]; }

    bool operator==(const SplitPlan&) const = default;
};

/// Expanding-window folds: fold i trains on rows [0, train_end) and validates
/// on [validation_begin, validation_end).
struct CvFold {
    std::size_t train_end = 0;
    std::size_t validation_begin = 0;
    std::size_t validation_end = 0;

    bool operator==(const CvFold&) const = default;
};

struct CvPlan {
    std::vector<CvFold> folds; // k - 1 scored folds

    bool operator==(const CvPlan&) const = default;
};

/// First floor(initial_fraction * n) rows form the initial window; each
/// remaining row is assigned Test with probability test_fraction by the
/// seeded deterministic generator, else Train. Identical arguments produce
/// identical plans.
SplitPlan make_split_plan(std::size_t n, double initial_fraction, double test_fraction, std::uint64_t seed);

/// Rows (initial or stream-Train) whose timestamp is strictly before t.
/// t must be the timestamp of some Test row of the plan.
std::vector<std::size_t> admissible_training_rows(const TimeSeriesDataset& ds, const SplitPlan& plan,
                                                  Timestamp t);

/// k equal blocks in time order (remainder rows join the last block); fold i
/// trains on blocks 0..i and validates on block i+1, giving k-1 scored folds.
CvPlan make_cv_plan(std::size_t n, std::size_t k);

enum class EventKind { Retrain, Predict };

struct ScheduleEvent {
    EventKind kind = EventKind::Retrain;
    std::size_t row = 0;

    bool operator==(const ScheduleEvent&) const = default;
};

/// Timestamp-ordered event stream for one pass over the plan. Initial-window
/// rows appear as leading Retrain events. Within a group of equal timestamps
/// Predict events come first, so a prediction is never preceded by a
/// co-timestamped (inadmissible) retrain.
std::vector<ScheduleEvent> prequential_schedule(const TimeSeriesDataset& ds, const SplitPlan& plan);

/// CSV round-trip ("row_index,role" with role INITIAL/TRAIN/TEST) so external
/// tools can audit the split.
std::string export_split_plan(const SplitPlan& plan);
SplitPlan import_split_plan(const std::string& csv_text);

} // namespace ridgecast
