#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pin {

/// Monetary values are carried as millions of USD throughout.
using Money = double;
/// Dense country identifier, 0..N_total-1, assigned by registry order.
using NodeId = int;

/// Raised on malformed or inconsistent input (files, arguments).
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a domain invariant is violated (e.g. no strongly-connected core).
class invariant_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on numerical failures (non-convergence, degenerate solves).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AssetClass { E, LD, SD };

std::string to_string(AssetClass c);
AssetClass parse_asset_class(const std::string& s);

struct Country {
    NodeId id = -1;
    std::string iso;
    std::string name;
    bool is_ofc = false;
};

/// Country table with dense ids in insertion order and unique ISO codes.
class CountryRegistry {
public:
    NodeId add(std::string iso, std::string name, bool is_ofc);

    int size() const { return static_cast<int>(entries_.size()); }
    const Country& at(NodeId id) const;
    const Country* find_iso(const std::string& iso) const;
    const std::vector<Country>& entries() const { return entries_; }

private:
    std::vector<Country> entries_;
    std::unordered_map<std::string, NodeId> by_iso_;
};

struct PositionRecord {
    int year = 0;
    NodeId source = -1;
    NodeId target = -1;
    Money position = 0;  // nominal on input, may be negative
};

/// Year-month date used by the model-fit time series.
struct Date {
    int year = 0;
    int month = 1;  // 1..12

    int month_index() const { return year * 12 + (month - 1); }
    static Date from_month_index(int idx);
    Date plus_months(int m) const { return from_month_index(month_index() + m); }

    auto operator<=>(const Date&) const = default;
};

std::string to_string(const Date& d);
Date parse_date(const std::string& s);  // "YYYY-MM"

}  // namespace pin
