#pragma once

// Machine-readable records. Rationals are [num, den] integer pairs (decimal
// strings when a part exceeds 64 bits); object keys are sorted.

#include "oklab/additivity.hpp"
#include "oklab/inequalities.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace oklab::report {

using nlohmann::json;

json to_json(const Rat& r);
json to_json(const RatVec& v);
json to_json(const exactgeom::Polytope& p);
json to_json(const toric::AdmissibleFlag& f);
json to_json(const okounkov::NOBody& b);
json to_json(const additivity::AdditivityVerdict& v);
json to_json(const additivity::Replay& r);
json to_json(const additivity::NecessaryCondition& n);
json to_json(const additivity::StrictSearch& s);
json to_json(const inequalities::InequalityRecord& r);
json to_json(const inequalities::Cor13Check& c);
json to_json(const inequalities::Injectivity& i);

/// "num/den", or "num" for integers.
std::string to_text(const Rat& r);

struct CheckRecord {
    std::string key;    // unique within a report; fixes the output order
    std::string suite;
    std::string status;  // "pass", "fail" or "skipped"
    json detail = json::object();
    std::optional<json> witness;
};

struct Report {
    std::string tool = "oklab";
    std::string version;
    json config = json::object();
    std::vector<CheckRecord> checks;

    std::size_t count(const std::string& status) const;
    bool all_passed() const { return count("fail") == 0; }
    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void append(const Report& other);
};

json to_json(const Report& r);
std::string to_json_text(const Report& r);
/// One row per check: key, suite, status, then detail scalars flattened as
/// path=value with rationals as num/den.
std::string to_csv(const Report& r);

std::string version_string();

}  // namespace oklab::report
