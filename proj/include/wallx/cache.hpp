#pragma once

// Content-addressed on-disk cache of serialized reports.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>

namespace wallx {

inline constexpr std::string_view kArtifactVersion = "wallx-1.0";

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Entries are `<dir>/<key>.json`: a header line `wallx-cache <key> <checksum>`
/// followed by the payload bytes.
class Cache {
public:
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// `WALLX_CACHE`, or `.wallx-cache` in the working directory.
    static Cache from_env()
    {
        const char* env = std::getenv("WALLX_CACHE");
        return Cache(env && *env ? std::filesystem::path(env) : std::filesystem::path(".wallx-cache"));
    }

    static std::string key(std::string_view subcommand, std::string_view canonical_params,
                           std::string_view version = kArtifactVersion)
    {
        std::string material;
        material.append(subcommand).append("\n").append(canonical_params).append("\n").append(version);
        return hex64(fnv1a(material));
    }

    const std::filesystem::path& dir() const { return dir_; }

    /// Payload for the key; a damaged entry yields nullopt and a warning.
    std::optional<std::string> get(const std::string& key, std::string* warning = nullptr) const
    {
        const auto path = entry(key);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) return std::nullopt;
        std::ifstream in(path, std::ios::binary);
        std::string header;
        if (!in || !std::getline(in, header)) return damaged(key, "unreadable entry", warning);
        std::ostringstream body;
        body << in.rdbuf();
        const std::string payload = body.str();
        std::istringstream hs(header);
        std::string magic, k, sum;
        hs >> magic >> k >> sum;
        if (magic != "wallx-cache" || k != key) return damaged(key, "bad header", warning);
        if (sum != hex64(fnv1a(payload))) return damaged(key, "checksum mismatch", warning);
        return payload;
    }

    void put(const std::string& key, std::string_view payload) const
    {
        std::filesystem::create_directories(dir_);
        const auto path = entry(key);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << "wallx-cache " << key << " " << hex64(fnv1a(payload)) << "\n" << payload;
            if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path entry(const std::string& key) const { return dir_ / (key + ".json"); }

    static std::optional<std::string> damaged(const std::string& key, const char* why, std::string* warning)
    {
        if (warning) *warning = "cache entry " + key + " ignored: " + why;
        return std::nullopt;
    }

    std::filesystem::path dir_;
};

}  // namespace wallx
