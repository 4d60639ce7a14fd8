#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dagchain {

/// Outcome of one verification check. Rendered either as aligned
/// "key: value" text or as a flat JSON object.
struct Report {
    using Value = std::variant<bool, std::int64_t, double, std::string>;

    std::string check;
    bool passed = false;
    std::vector<std::pair<std::string, Value>> fields;
    std::vector<std::string> notes;

    Report& add(std::string key, Value value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Report& note(std::string line) {
        notes.push_back(std::move(line));
        return *this;
    }

    void write_text(std::ostream& os) const;
    /// One-line JSON object: {"check":..., "passed":..., <fields>...}.
    std::string to_json() const;
};

}  // namespace dagchain
