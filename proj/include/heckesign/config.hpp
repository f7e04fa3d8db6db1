// Optional key=value configuration file, located through the
// HECKESIGN_CONFIG environment variable: default precision, cache
// directory and thread count.
#pragma once

#include <optional>
#include <string>

namespace heckesign {

struct Config {
    int prec = 210;
    std::string cache_dir; // empty = caching off
    int threads = 1;
};

/// Parse a key=value file ('#' comments, blank lines ignored).
Config load_config_file(const std::string& path);

/// Config from $HECKESIGN_CONFIG when set, defaults otherwise.
Config load_config_from_env();

} // namespace heckesign
