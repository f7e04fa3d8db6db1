#include "heckesign/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace heckesign {

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    Config cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "prec")
            cfg.prec = std::stoi(value);
        else if (key == "cache_dir")
            cfg.cache_dir = value;
        else if (key == "threads")
            cfg.threads = std::stoi(value);
        else if (!key.empty())
            throw std::runtime_error("config: unknown key " + key);
    }
    if (cfg.prec < 16) throw std::runtime_error("config: prec must be >= 16");
    if (cfg.threads < 1) throw std::runtime_error("config: threads must be >= 1");
    return cfg;
}

Config load_config_from_env() {
    const char* path = std::getenv("HECKESIGN_CONFIG");
    if (path == nullptr || *path == '\0') return Config{};
    return load_config_file(path);
}

} // namespace heckesign
