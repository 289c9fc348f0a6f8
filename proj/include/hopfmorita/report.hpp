#pragma once

// Verification reports: named identity checks with counts and failure witnesses.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <deque>
#include <vector>

namespace hopfmorita {

using Json = nlohmann::ordered_json;

struct Check {
    static constexpr std::size_t kMaxWitnesses = 16;

    std::string name;
    std::size_t evaluated = 0;
    std::size_t failed = 0;
    std::vector<std::string> witnesses;

    bool passed() const { return failed == 0; }

    /// Records one evaluated instance; returns ok for chaining in conditions.
    bool expect(bool ok, const std::string& witness = {}) {
        ++evaluated;
        if (!ok) {
            ++failed;
            if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
        }
        return ok;
    }

    Json to_json() const {
        Json j;
        j["check"] = name;
        j["verdict"] = passed() ? "PASS" : "FAIL";
        j["evaluated"] = evaluated;
        j["failed"] = failed;
        if (!witnesses.empty()) j["witnesses"] = witnesses;
        return j;
    }
};

class Report {
public:
    explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

    Check& check(const std::string& name) {
        for (auto& c : checks_)
            if (c.name == name) return c;
        checks_.emplace_back();
        checks_.back().name = name;
        return checks_.back();
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks_)
            if (c.name == name) return &c;
        return nullptr;
    }

    bool passed() const {
        for (const auto& c : checks_)
            if (!c.passed()) return false;
        return true;
    }

    bool passed(const std::string& name) const {
        const Check* c = find(name);
        return c && c->passed();
    }

    const std::deque<Check>& checks() const { return checks_; }
    const std::string& subject() const { return subject_; }
    Json& info() { return info_; }
    const Json& info() const { return info_; }

    void merge(const Report& other, const std::string& prefix = {}) {
        for (const auto& c : other.checks_) {
            Check& mine = check(prefix + c.name);
            mine.evaluated += c.evaluated;
            mine.failed += c.failed;
            for (const auto& w : c.witnesses)
                if (mine.witnesses.size() < Check::kMaxWitnesses) mine.witnesses.push_back(w);
        }
    }

    Json to_json() const {
        Json j;
        j["subject"] = subject_;
        j["verdict"] = passed() ? "PASS" : "FAIL";
        Json arr = Json::array();
        for (const auto& c : checks_) arr.push_back(c.to_json());
        j["checks"] = arr;
        if (!info_.is_null()) j["info"] = info_;
        return j;
    }

private:
    std::string subject_;
    std::deque<Check> checks_;
    Json info_;
};

}  // namespace hopfmorita
