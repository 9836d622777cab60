#include "oklab/toric.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace oklab::toric {

namespace {

Fan make(std::string name, std::vector<IntVec> rays, std::vector<std::vector<std::size_t>> cones) {
    Fan f;
    f.name = std::move(name);
    f.dim = rays.front().size();
    f.rays = std::move(rays);
    f.max_cones = std::move(cones);
    return f;
}

std::vector<Fan> builtin_fans() {
    std::vector<Fan> out;
    out.push_back(make("p1", {{1}, {-1}}, {{0}, {1}}));
    out.push_back(make("p2", {{-1, -1}, {1, 0}, {0, 1}}, {{1, 2}, {0, 2}, {0, 1}}));
    out.push_back(make("p3", {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                       {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}));
    out.push_back(make("p1xp1", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    {
        std::vector<std::vector<std::size_t>> cones;
        for (std::size_t mask = 0; mask < 8; ++mask) {
            std::vector<std::size_t> c;
            for (std::size_t i = 0; i < 3; ++i) c.push_back((mask >> i) & 1 ? i + 3 : i);
            cones.push_back(std::move(c));
        }
        out.push_back(make("p1xp1xp1", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
                           std::move(cones)));
    }
    out.push_back(make("f1", {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    out.push_back(make("blpq-p2", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    return out;
}

const std::vector<std::pair<std::string, ToricVariety>>& builtins() {
    static const auto table = [] {
        std::vector<std::pair<std::string, ToricVariety>> t;
        for (auto& f : builtin_fans()) {
            std::string name = f.name;
            t.emplace_back(name, ToricVariety(std::move(f)));
        }
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> builtin_testbed_names() {
    std::vector<std::string> names;
    for (const auto& [n, _] : builtins()) names.push_back(n);
    return names;
}

const ToricVariety& builtin_testbed(const std::string& name) {
    for (const auto& [n, x] : builtins())
        if (n == name) return x;
    throw ToricError("unknown testbed: " + name);
}

Fan fan_from_json_text(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        Fan f;
        f.name = j.at("name").get<std::string>();
        f.rays = j.at("rays").get<std::vector<IntVec>>();
        f.max_cones = j.at("max_cones").get<std::vector<std::vector<std::size_t>>>();
        if (f.rays.empty()) throw ToricError("catalog entry has no rays");
        f.dim = f.rays.front().size();
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ToricError(std::string("bad catalog entry: ") + e.what());
    }
}

std::map<std::string, Fan> load_catalog(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ToricError("catalog directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::map<std::string, Fan> out;
    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        Fan f = fan_from_json_text(ss.str());
        std::string name = f.name;
        out.emplace(std::move(name), std::move(f));
    }
    return out;
}

Catalog::Catalog(std::optional<std::filesystem::path> dir) {
    if (!dir) return;
    for (auto& [name, fan] : load_catalog(*dir)) extra_.emplace(name, ToricVariety(std::move(fan)));
}

std::vector<std::string> Catalog::names() const {
    auto names = builtin_testbed_names();
    for (const auto& [n, _] : extra_)
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    return names;
}

const ToricVariety& Catalog::get(const std::string& name) const {
    auto it = extra_.find(name);
    if (it != extra_.end()) return it->second;
    return builtin_testbed(name);
}

}  // namespace oklab::toric
