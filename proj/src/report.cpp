#include "dagchain/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace dagchain {

namespace {

void write_value(std::ostream& os, const Report::Value& v) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) {
                os << (x ? "true" : "false");
            } else if constexpr (std::is_same_v<T, double>) {
                os << std::setprecision(10) << x;
            } else {
                os << x;
            }
        },
        v);
}

}  // namespace

void Report::write_text(std::ostream& os) const {
    os << check << ": " << (passed ? "PASS" : "FAIL") << '\n';
    std::size_t width = 0;
    for (const auto& [key, _] : fields) {
        width = std::max(width, key.size());
    }
    for (const auto& [key, value] : fields) {
        os << "  " << std::left << std::setw(static_cast<int>(width)) << key << "  ";
        write_value(os, value);
        os << '\n';
    }
    for (const auto& line : notes) {
        os << "  note: " << line << '\n';
    }
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["passed"] = passed;
    for (const auto& [key, value] : fields) {
        std::visit([&](const auto& x) { j[key] = x; }, value);
    }
    if (!notes.empty()) {
        j["notes"] = notes;
    }
    return j.dump();
}

}  // namespace dagchain
