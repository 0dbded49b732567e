#pragma once

#include <string>
#include <vector>

#include "autolog/evaluation.hpp"
#include "autolog/inference.hpp"
#include "autolog/timeseries.hpp"

namespace autolog {

enum class FillPolicy { Error, Forward };

/// Sensor CSV: header `timestamp,<name_1>,...,<name_d>`; timestamps are
/// either ISO-8601 UTC at a fixed minute-multiple granularity or bare step
/// indices increasing by exactly 1. Forward fill copies the previous value
/// into a missing cell (first data row must be complete).
std::vector<SensorSeries> load_sensors(const std::string& path, FillPolicy fill);

/// Failure CSV: header `start,end`, inclusive bounds, same timestamp
/// convention as the sensor file it accompanies.
FailureLog load_failures(const std::string& path, std::int64_t start_epoch_seconds,
                         std::int64_t granularity_minutes);

void write_sensors_csv(const std::string& path, const std::vector<SensorSeries>& sensors);
void write_failures_csv(const std::string& path, const FailureLog& failures);

/// Columns: origin_step, raw_prob, smoothed_prob, decision.
void write_trace_csv(const std::string& path, const PredictionTrace& trace);

std::string format_metrics_report(const MetricsReport& report,
                                  const std::vector<std::pair<std::string, std::string>>& header_lines = {});
void write_text_file(const std::string& path, const std::string& content);

}  // namespace autolog
