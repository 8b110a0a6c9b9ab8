/**
 * @file report.hpp
 * @brief Verification reports: per-axiom status with first counterexample.
 */
#pragma once

#include <string>
#include <vector>

namespace quasiline {

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string counterexample;  // basis-tuple labels, empty when pass
    double millis = 0.0;
};

struct Report {
    std::string title;
    std::vector<CheckItem> items;

    bool ok() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }

    CheckItem& add(std::string name) {
        items.push_back(CheckItem{std::move(name)});
        return items.back();
    }

    const CheckItem* find(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return &it;
        return nullptr;
    }

    std::string to_text() const;
    /// Status lines only, without timings (stable across runs).
    std::string to_text_stable() const;
};

}  // namespace quasiline
