#include "oklab/report.hpp"

#include <algorithm>
#include <sstream>

namespace oklab::report {

namespace {

json int_json(const BigInt& z) {
    if (fits_int64(z)) return z.convert_to<std::int64_t>();
    return z.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Integer parts outside int64 are written as decimal strings.
bool is_int_part(const json& p) {
    if (p.is_number_integer()) return true;
    if (!p.is_string()) return false;
    const auto& s = p.get_ref<const std::string&>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    return s.size() >= start + 19 && s.find_first_not_of("0123456789", start) == std::string::npos;
}

bool is_rational_pair(const json& j) {
    return j.is_array() && j.size() == 2 && is_int_part(j[0]) && is_int_part(j[1]) &&
           (j[1].is_string() ? j[1].get_ref<const std::string&>()[0] != '-' : j[1].get<std::int64_t>() > 0);
}

std::string scalar_text(const json& j) {
    if (is_rational_pair(j)) {
        auto part = [](const json& p) { return p.is_string() ? p.get<std::string>() : std::to_string(p.get<std::int64_t>()); };
        const std::string den = part(j[1]);
        return den == "1" ? part(j[0]) : part(j[0]) + "/" + den;
    }
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void flatten(const json& j, const std::string& path, std::vector<std::string>& out) {
    const bool ray_list = path == "cone" || (path.size() > 5 && path.compare(path.size() - 5, 5, ".cone") == 0);
    if (ray_list && j.is_array()) {
        std::string rays;
        for (std::size_t i = 0; i < j.size(); ++i) rays += (i ? " " : "") + j[i].dump();
        out.push_back(path + "=" + rays);
        return;
    }
    if (is_rational_pair(j) || !j.is_structured()) {
        out.push_back(path + "=" + scalar_text(j));
        return;
    }
    if (j.is_array()) {
        // Long arrays (vertex lists, traces) stay in the JSON form only.
        if (j.size() > 4) {
            out.push_back(path + ".size=" + std::to_string(j.size()));
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
}

}  // namespace

json to_json(const Rat& r) { return json::array({int_json(numerator(r)), int_json(denominator(r))}); }

json to_json(const RatVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

json to_json(const exactgeom::Polytope& p) {
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back(to_json(v));
    return json{{"dim", p.dim()}, {"vertices", verts}};
}

json to_json(const toric::AdmissibleFlag& f) {
    json out{{"cone", f.rays}};
    if (f.ratios) out["ratios"] = to_json(RatVec(f.ratios->begin(), f.ratios->end()));
    return out;
}

json to_json(const okounkov::NOBody& b) {
    json out = to_json(b.body);
    out["flag"] = to_json(b.flag);
    out["class"] = to_json(b.cls);
    out["m_used"] = b.m_used;
    out["exact"] = b.exact;
    return out;
}

json to_json(const additivity::AdditivityVerdict& v) {
    json out{{"status", additivity::to_string(v.status)},
             {"vol1", to_json(v.vol1)},
             {"vol2", to_json(v.vol2)},
             {"vol_sum", to_json(v.vol_sum)},
             {"minkowski", to_json(v.minkowski)},
             {"combined", to_json(v.combined)}};
    if (v.witness) out["witness"] = to_json(*v.witness);
    if (v.violated) out["violated"] = json{{"normal", to_json(v.violated->normal)}, {"offset", to_json(v.violated->offset)}};
    return out;
}

json to_json(const additivity::Replay& r) {
    json trace = json::array();
    for (const auto& s : r.trace) trace.push_back(json{{"name", s.name}, {"holds", s.holds}, {"body", to_json(s.body)}});
    return json{{"ok", r.ok},           {"case", r.late ? "t>=t0" : "t<t0"},
                {"r", to_json(r.r)},    {"t0", to_json(r.t0)},
                {"t", to_json(r.t)},    {"lambda1", to_json(r.lambda1)},
                {"mu1", to_json(r.mu1)}, {"lambda2", to_json(r.lambda2)},
                {"mu2", to_json(r.mu2)}, {"swapped", r.swapped},
                {"trace", trace}};
}

json to_json(const additivity::NecessaryCondition& n) {
    json out{{"ok", n.ok},
             {"vacuous", n.vacuous},
             {"mu_l", to_json(n.mu_l)},
             {"mu_m", to_json(n.mu_m)},
             {"mu_sum", to_json(n.mu_sum)},
             {"mu_defect", to_json(n.mu_sum - n.mu_l - n.mu_m)},
             {"l0", to_json(n.l0)},
             {"m0", to_json(n.m0)},
             {"grid_points", n.grid_points}};
    if (n.off_boundary) out["off_boundary"] = to_json(*n.off_boundary);
    return out;
}

json to_json(const additivity::StrictSearch& s) {
    json out{{"found", s.found},
             {"pairs_checked", s.pairs_checked},
             {"pairs_in_theorem_cones", s.pairs_in_theorem_cones},
             {"classes", s.classes},
             {"max_coeff", s.max_coeff}};
    if (s.found) {
        out["n1"] = to_json(s.n1);
        out["n2"] = to_json(s.n2);
        out["verdict"] = to_json(s.verdict);
    } else {
        out["record"] = "none found within bounds";
    }
    return out;
}

json to_json(const inequalities::InequalityRecord& r) {
    return json{{"name", r.name},           {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)},
                {"slack", to_json(r.slack)}, {"inputs", r.inputs},    {"seed", r.seed}};
}

json to_json(const inequalities::Cor13Check& c) {
    json out{{"ok", c.ok},
             {"intersection_side", to_json(c.intersection_side)},
             {"volume_side", to_json(c.volume_side)},
             {"basis_intersections", to_json(c.basis_intersections)},
             {"basis_volumes", to_json(c.basis_volumes)}};
    if (c.intersection_direct) out["intersection_direct"] = to_json(*c.intersection_direct);
    if (c.volume_direct) out["volume_direct"] = to_json(*c.volume_direct);
    return out;
}

json to_json(const inequalities::Injectivity& i) {
    return json{{"ok", i.ok},
                {"self_sum", to_json(i.self_sum)},
                {"self_l", to_json(i.self_l)},
                {"self_m", to_json(i.self_m)},
                {"root_sum_lo", to_json(i.root_lo)},
                {"root_sum_hi", to_json(i.root_hi)},
                {"vol_sum", to_json(i.vol_sum)},
                {"vol_l", to_json(i.vol_l)},
                {"vol_m", to_json(i.vol_m)},
                {"volumes_strict", i.volumes_strict}};
}

std::string to_text(const Rat& r) { return scalar_text(to_json(r)); }

std::size_t Report::count(const std::string& status) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == status; }));
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

json to_json(const Report& r) {
    std::vector<const CheckRecord*> sorted;
    for (const auto& c : r.checks) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->key < b->key; });
    json checks = json::array();
    for (const auto* c : sorted) {
        json j{{"key", c->key}, {"suite", c->suite}, {"status", c->status}, {"detail", c->detail}};
        if (c->witness) j["witness"] = *c->witness;
        checks.push_back(std::move(j));
    }
    return json{{"tool", r.tool},
                {"version", r.version.empty() ? version_string() : r.version},
                {"config", r.config},
                {"checks", checks},
                {"summary",
                 {{"total", r.checks.size()},
                  {"pass", r.count("pass")},
                  {"fail", r.count("fail")},
                  {"skipped", r.count("skipped")}}}};
}

std::string to_json_text(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string to_csv(const Report& r) {
    const json j = to_json(r);
    std::ostringstream out;
    out << "key,suite,status,detail\n";
    for (const auto& c : j["checks"]) {
        std::vector<std::string> fields;
        flatten(c["detail"], "", fields);
        if (c.contains("witness")) flatten(c["witness"], "witness", fields);
        std::string detail;
        for (std::size_t i = 0; i < fields.size(); ++i) detail += (i ? ";" : "") + fields[i];
        out << csv_escape(c["key"].get<std::string>()) << ',' << csv_escape(c["suite"].get<std::string>()) << ','
            << c["status"].get<std::string>() << ',' << csv_escape(detail) << '\n';
    }
    return out.str();
}

std::string version_string() { return "0.3.0"; }

}  // namespace oklab::report
