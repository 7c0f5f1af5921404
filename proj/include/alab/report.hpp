// report.hpp
// Check reports with JSON and text rendering.  JSON serialization is a fixed
// point under parse -> serialize (ordered keys, integer timings, expression
// strings in the input grammar).
#pragma once

#include "alab/checks.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace alab {

using json = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    std::string status; // "pass" | "fail" | "skip"
    long cases = 0;
    std::vector<std::string> witnesses;
    long duration_ms = 0;

    static CheckResult from(const CheckOutcome& o, long ms) {
        CheckResult r;
        r.name = o.name;
        r.status = o.skipped ? "skip" : (o.pass ? "pass" : "fail");
        r.cases = o.cases;
        r.witnesses = o.witnesses;
        r.duration_ms = ms;
        return r;
    }
};

struct Report {
    std::string command;
    std::string fixture;
    std::vector<CheckResult> checks;
    json computations = json::object();

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }

    json to_json() const {
        json j;
        j["command"] = command;
        j["fixture"] = fixture;
        j["ok"] = ok();
        j["checks"] = json::array();
        for (const auto& c : checks) {
            json cj;
            cj["name"] = c.name;
            cj["status"] = c.status;
            cj["cases"] = c.cases;
            cj["witnesses"] = c.witnesses;
            cj["duration_ms"] = c.duration_ms;
            j["checks"].push_back(cj);
        }
        j["computations"] = computations;
        return j;
    }

    static Report from_json(const json& j) {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.fixture = j.at("fixture").get<std::string>();
        for (const auto& cj : j.at("checks")) {
            CheckResult c;
            c.name = cj.at("name").get<std::string>();
            c.status = cj.at("status").get<std::string>();
            c.cases = cj.at("cases").get<long>();
            for (const auto& w : cj.at("witnesses")) c.witnesses.push_back(w.get<std::string>());
            c.duration_ms = cj.at("duration_ms").get<long>();
            r.checks.push_back(std::move(c));
        }
        r.computations = j.at("computations");
        return r;
    }

    std::string to_text() const {
        std::string out = "== " + command + " on " + fixture + " ==\n";
        for (const auto& c : checks) {
            out += "  [" + c.status + "] " + c.name;
            if (c.cases > 0) out += " (" + std::to_string(c.cases) + " cases";
            if (c.cases > 0) out += ", " + std::to_string(c.duration_ms) + " ms)";
            out += "\n";
            for (const auto& w : c.witnesses) out += "      " + w + "\n";
        }
        if (!computations.empty()) out += "  computations: " + computations.dump() + "\n";
        out += ok() ? "  OK\n" : "  FAILED\n";
        return out;
    }
};

} // namespace alab
