#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "perf.hpp"

namespace sweep1d {

inline constexpr const char* kCsvHeader =
    "equation,method,scheme,n,w,wf,ranks,steps,mode,avg_us_per_step,msgs,bytes,rounds,"
    "virtual_comm_us,setup_us";

/// Serialize records under the fixed header, one row per record, quoted per
/// RFC 4180 where needed, in deterministic config-lexicographic order.
void emit_csv(std::vector<TimingRecord> records, std::ostream& os);
void emit_csv(const std::vector<TimingRecord>& records, const std::string& path);

/// Read rows produced by emit_csv (used by the fit/report subcommands).
std::vector<TimingRecord> read_csv(const std::string& path);

std::string csv_row(const TimingRecord& rec);

} // namespace sweep1d
