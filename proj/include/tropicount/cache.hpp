#ifndef TROPICOUNT_CACHE_HPP
#define TROPICOUNT_CACHE_HPP

// Rational counts kept in a JSON file keyed by the query, read and written through.

#include "formula.hpp"
#include "rational_count.hpp"

#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace tropicount {

class CountCache {
public:
    /// No path: in memory only.
    CountCache() = default;
    explicit CountCache(std::filesystem::path path) : path_(std::move(path)) { reload(); }

    /// $TROPICOUNT_CACHE if set, otherwise `fallback`.
    static std::filesystem::path resolve_path(const std::filesystem::path& fallback) {
        if (const char* env = std::getenv("TROPICOUNT_CACHE"); env && *env) return env;
        return fallback;
    }

    const std::optional<std::filesystem::path>& path() const { return path_; }
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return records_.size();
    }

    std::optional<CountRecord> find(const CountQuery& q) {
        std::lock_guard lock(mutex_);
        auto it = records_.find(q.key());
        if (it == records_.end()) return std::nullopt;
        return it->second;
    }

    void store(CountRecord r) {
        r.witnesses.clear();
        std::lock_guard lock(mutex_);
        records_[r.query.key()] = r;
        if (path_) write_through(r);
    }

    /// Cached record, or a fresh floor-diagram count that is then stored.
    CountRecord count(const CountQuery& q, std::uint64_t seed = 0) {
        if (auto r = find(q)) {
            ++hits_;
            return *r;
        }
        ++misses_;
        auto r = count_rational(q);
        r.seed = seed;
        store(r);
        return r;
    }

    CountProvider provider() {
        return [this](const CountQuery& q) { return count(q).value; };
    }

private:
    struct FileLock {
        int fd = -1;
        explicit FileLock(const std::filesystem::path& p) {
            fd = ::open((p.string() + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
            if (fd >= 0) ::flock(fd, LOCK_EX);
        }
        ~FileLock() {
            if (fd >= 0) {
                ::flock(fd, LOCK_UN);
                ::close(fd);
            }
        }
        FileLock(const FileLock&) = delete;
        FileLock& operator=(const FileLock&) = delete;
    };

    static std::map<std::string, CountRecord> read_file(const std::filesystem::path& p) {
        std::map<std::string, CountRecord> out;
        std::ifstream in(p);
        if (!in) return out;
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception&) {
            return out;  // unreadable cache: start over
        }
        if (!j.is_object() || !j.contains("records")) return out;
        for (auto& [k, v] : j["records"].items()) out[k] = record_from_json(v);
        return out;
    }

    void reload() {
        FileLock lock(*path_);
        records_ = read_file(*path_);
    }

    void write_through(const CountRecord& r) {
        FileLock lock(*path_);
        auto merged = read_file(*path_);
        merged[r.query.key()] = r;
        for (auto& [k, v] : merged) records_.try_emplace(k, v);
        nlohmann::json j = {{"schema", 1}, {"records", nlohmann::json::object()}};
        for (const auto& [k, v] : merged) j["records"][k] = to_json(v);
        const auto tmp = path_->string() + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot write cache " + tmp);
            out << j.dump(2) << "\n";
        }
        std::filesystem::rename(tmp, *path_);
    }

    std::optional<std::filesystem::path> path_;
    std::map<std::string, CountRecord> records_;
    mutable std::mutex mutex_;
    std::size_t hits_ = 0, misses_ = 0;
};

} // namespace tropicount

#endif // TROPICOUNT_CACHE_HPP
