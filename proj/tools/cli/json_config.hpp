#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

namespace ridgeframe::cli {

// JSON config files for CLI11: {"decompose": {"directions": 128}} sets
// --directions of the decompose subcommand. Flags on the command line win.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConversionError("writing JSON configs is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config: top level must be an object");
        std::vector<CLI::ConfigItem> out;
        walk(j, "", {}, out);
        return out;
    }

private:
    static std::string scalar(const nlohmann::json& v, const std::string& name) {
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("config: unsupported value for '" + name + "'");
    }

    static void walk(const nlohmann::json& j, const std::string& name, std::vector<std::string> parents,
                     std::vector<CLI::ConfigItem>& out) {
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (auto it = j.begin(); it != j.end(); ++it) walk(*it, it.key(), parents, out);
            return;
        }
        CLI::ConfigItem item;
        item.name = name;
        item.parents = std::move(parents);
        if (j.is_array())
            for (const auto& v : j) item.inputs.push_back(scalar(v, name));
        else
            item.inputs.push_back(scalar(j, name));
        out.push_back(std::move(item));
    }
};

}  // namespace ridgeframe::cli
