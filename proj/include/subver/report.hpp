#pragma once
// Shared result types for verification suites.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace subver::report {

struct CheckItem {
  std::string id;
  std::string description;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct StructureReport {
  std::vector<CheckItem> items;

  bool passed() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass; });
  }
  const CheckItem* find(const std::string& id) const {
    for (const auto& i : items)
      if (i.id == id) return &i;
    return nullptr;
  }
  void push(std::string id, std::string desc, double residual, double tol,
            std::string note = {}) {
    items.push_back(
        {std::move(id), std::move(desc), residual, tol, residual <= tol, std::move(note)});
  }
  void append(const StructureReport& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
};

}  // namespace subver::report
