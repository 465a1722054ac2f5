// Pass/fail reports shared by the verification routines.

#ifndef INVMON_REPORT_HPP_
#define INVMON_REPORT_HPP_

#include <cstddef>
#include <string>
#include <deque>
#include <vector>

namespace invmon {

  struct CheckItem {
    std::string              name;
    bool                     ok      = true;
    std::size_t              checked = 0;
    std::vector<std::string> failures;

    void fail(std::string msg, std::size_t keep = 20) {
      ok = false;
      if (failures.size() < keep) {
        failures.push_back(std::move(msg));
      }
    }
  };

  struct CheckReport {
    std::deque<CheckItem> items;

    CheckItem& add(std::string name) {
      items.push_back({std::move(name), true, 0, {}});
      return items.back();
    }

    CheckItem const* find(std::string const& name) const {
      for (auto const& i : items) {
        if (i.name == name) {
          return &i;
        }
      }
      return nullptr;
    }

    bool ok() const {
      for (auto const& i : items) {
        if (!i.ok) {
          return false;
        }
      }
      return true;
    }

    std::string to_string() const {
      std::string out;
      for (auto const& i : items) {
        out += i.name + ": " + (i.ok ? "pass" : "FAIL") + " (" + std::to_string(i.checked)
               + " checked)\n";
        for (auto const& f : i.failures) {
          out += "  " + f + "\n";
        }
      }
      return out;
    }
  };

}  // namespace invmon

#endif  // INVMON_REPORT_HPP_
