#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

namespace hkloost {

struct CachedValue {
    std::complex<double> value;
    std::int64_t term_count = 0;
};

/// Append-only store of Kloosterman sums keyed by (multiplier fingerprint, m, n, c).
/// One record per line: "fingerprint,m,n,c,re,im,term_count", values to 17 significant digits.
/// Lookups may run concurrently; append/flush must come from a single writer.
class ResultCache {
public:
    /// Loads path if it exists (throws CacheCorruption on a malformed line); creates parent dirs.
    explicit ResultCache(std::filesystem::path path);
    ~ResultCache();

    ResultCache(const ResultCache&) = delete;
    ResultCache& operator=(const ResultCache&) = delete;

    std::optional<CachedValue> find(const std::string& fingerprint, std::int64_t m, std::int64_t n,
                                    std::int64_t c) const;
    /// Largest cached c for the key, 0 if none.
    std::int64_t max_c(const std::string& fingerprint, std::int64_t m, std::int64_t n) const;

    void append(const std::string& fingerprint, std::int64_t m, std::int64_t n, std::int64_t c,
                std::complex<double> value, std::int64_t term_count);
    void flush();

    std::size_t size() const;
    const std::filesystem::path& path() const { return path_; }

    /// Default location: $HKLOOST_CACHE_DIR/kloosterman.cache, or empty if the variable is unset.
    static std::optional<std::filesystem::path> default_path();

private:
    using Key = std::tuple<std::string, std::int64_t, std::int64_t, std::int64_t>;
    std::filesystem::path path_;
    std::map<Key, CachedValue> entries_;
    std::string pending_;
    mutable std::shared_mutex mu_;
};

}  // namespace hkloost
