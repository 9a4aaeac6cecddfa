#include "wikimrd/diagnostics.hpp"

namespace wikimrd {

void Diagnostics::report(std::string_view category, std::string detail) {
    auto it = counts_.find(category);
    if (it == counts_.end()) it = counts_.emplace(std::string(category), 0).first;
    ++it->second;
    Diagnostic d{std::string(category), page_, std::move(detail)};
    if (sink_) {
        sink_(d);
    } else {
        records_.push_back(std::move(d));
    }
}

void Diagnostics::absorb(Diagnostics&& other) {
    for (auto& d : other.records_) {
        auto it = counts_.find(d.category);
        if (it == counts_.end()) it = counts_.emplace(d.category, 0).first;
        ++it->second;
        if (sink_) {
            sink_(d);
        } else {
            records_.push_back(std::move(d));
        }
    }
    other.records_.clear();
    other.counts_.clear();
}

std::size_t Diagnostics::count(std::string_view category) const {
    auto it = counts_.find(category);
    return it == counts_.end() ? 0 : it->second;
}

std::size_t Diagnostics::total() const {
    std::size_t n = 0;
    for (const auto& [_, c] : counts_) n += c;
    return n;
}

}  // namespace wikimrd
