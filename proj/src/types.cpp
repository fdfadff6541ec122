#include "pin/types.hpp"

#include <cstdio>

namespace pin {

std::string to_string(AssetClass c) {
    switch (c) {
        case AssetClass::E: return "E";
        case AssetClass::LD: return "LD";
        case AssetClass::SD: return "SD";
    }
    return "?";
}

AssetClass parse_asset_class(const std::string& s) {
    if (s == "E") return AssetClass::E;
    if (s == "LD") return AssetClass::LD;
    if (s == "SD") return AssetClass::SD;
    throw input_error("unknown asset class '" + s + "' (expected E, LD or SD)");
}

NodeId CountryRegistry::add(std::string iso, std::string name, bool is_ofc) {
    if (iso.empty()) throw input_error("empty ISO code in registry");
    if (by_iso_.count(iso)) throw input_error("duplicate ISO code '" + iso + "' in registry");
    NodeId id = static_cast<NodeId>(entries_.size());
    by_iso_.emplace(iso, id);
    entries_.push_back(Country{id, std::move(iso), std::move(name), is_ofc});
    return id;
}

const Country& CountryRegistry::at(NodeId id) const {
    if (id < 0 || id >= size()) throw invariant_error("country id out of range");
    return entries_[static_cast<std::size_t>(id)];
}

const Country* CountryRegistry::find_iso(const std::string& iso) const {
    auto it = by_iso_.find(iso);
    return it == by_iso_.end() ? nullptr : &entries_[static_cast<std::size_t>(it->second)];
}

Date Date::from_month_index(int idx) {
    int y = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
    int m = idx - y * 12;
    return Date{y, m + 1};
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", d.year, d.month);
    return buf;
}

Date parse_date(const std::string& s) {
    int y = 0, m = 0;
    char trail = 0;
    if (std::sscanf(s.c_str(), "%d-%d%c", &y, &m, &trail) != 2 || m < 1 || m > 12)
        throw input_error("bad date '" + s + "' (expected YYYY-MM)");
    return Date{y, m};
}

}  // namespace pin
