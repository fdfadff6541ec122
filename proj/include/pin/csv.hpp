#pragma once

#include <map>
#include <string>
#include <vector>

#include "pin/nlsmm.hpp"
#include "pin/types.hpp"

namespace pin::csv {

/// registry CSV: header `iso,name,is_ofc`, is_ofc in {0,1}. Ids follow file order.
CountryRegistry read_registry(const std::string& path);

/// positions CSV: header `year,source_iso,target_iso,position_usd_millions`.
/// ISO codes must resolve against the registry; self-loops are rejected.
std::vector<PositionRecord> read_positions(const std::string& path,
                                           const CountryRegistry& registry);

/// deflator CSV: header `year,index`.
std::map<int, double> read_deflator(const std::string& path);

/// series CSV: header `date,series_id,value` with dates as YYYY-MM. Returns
/// one series per id with the cadence inferred from the spacing.
std::map<std::string, TimeSeries> read_series(const std::string& path);

}  // namespace pin::csv
