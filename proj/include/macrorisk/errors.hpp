#pragma once

#include <stdexcept>
#include <string>

namespace macrorisk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// series / dataset
struct SeriesTooShort : Error {
    explicit SeriesTooShort(const std::string& what) : Error(what) {}
};
struct NonPositiveValue : Error {
    explicit NonPositiveValue(const std::string& what) : Error(what) {}
};
struct NonFiniteValue : Error {
    explicit NonFiniteValue(const std::string& what) : Error(what) {}
};

// csv ingestion
struct BadPeriodFormat : Error {
    explicit BadPeriodFormat(const std::string& what) : Error(what) {}
};
struct NonConsecutivePeriods : Error {
    explicit NonConsecutivePeriods(const std::string& what) : Error(what) {}
};
struct NonNumericCell : Error {
    NonNumericCell(std::size_t row, const std::string& column)
        : Error("non-numeric cell at row " + std::to_string(row) +
                ", column " + column),
          row(row), column(column) {}
    std::size_t row;
    std::string column;
};
struct DuplicateColumn : Error {
    explicit DuplicateColumn(const std::string& what) : Error(what) {}
};
struct EmptyFile : Error {
    explicit EmptyFile(const std::string& what) : Error(what) {}
};
struct RowWidthMismatch : Error {
    explicit RowWidthMismatch(const std::string& what) : Error(what) {}
};

// estimation
struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(what) {}
};
struct InsufficientObservations : Error {
    explicit InsufficientObservations(const std::string& what) : Error(what) {}
};
struct MissingRegressor : Error {
    explicit MissingRegressor(const std::string& what) : Error(what) {}
};
struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string& what) : Error(what) {}
};
struct DegenerateResiduals : Error {
    explicit DegenerateResiduals(const std::string& what) : Error(what) {}
};

// pipeline
struct MissingColumn : Error {
    explicit MissingColumn(const std::string& what) : Error(what) {}
};
struct OrderExceeded : Error {
    explicit OrderExceeded(const std::string& what) : Error(what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace macrorisk
