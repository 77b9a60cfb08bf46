#include "hkloost/result_cache.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <vector>

#include "hkloost/errors.hpp"

namespace hkloost {

namespace {

constexpr std::size_t kFingerprintFields = 5;
constexpr std::size_t kFields = kFingerprintFields + 6;

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_int(const std::string& s, std::int64_t& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string format_record(const std::string& fp, std::int64_t m, std::int64_t n, std::int64_t c,
                          std::complex<double> v, std::int64_t count) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ",%lld,%lld,%lld,%.17g,%.17g,%lld\n", static_cast<long long>(m),
                  static_cast<long long>(n), static_cast<long long>(c), v.real(), v.imag(),
                  static_cast<long long>(count));
    return fp + buf;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != kFields) throw CacheCorruption(path_.string(), lineno, "expected 11 comma-separated fields");
        std::string fp = f[0];
        for (std::size_t i = 1; i < kFingerprintFields; ++i) fp += "," + f[i];
        std::int64_t m, n, c, count;
        double re, im;
        if (!parse_int(f[5], m) || !parse_int(f[6], n) || !parse_int(f[7], c) || !parse_double(f[8], re) ||
            !parse_double(f[9], im) || !parse_int(f[10], count) || c < 1 || count < 0)
            throw CacheCorruption(path_.string(), lineno, "malformed numeric field");
        entries_[{std::move(fp), m, n, c}] = {{re, im}, count};
    }
}

ResultCache::~ResultCache() {
    try {
        flush();
    } catch (...) {
    }
}

std::optional<CachedValue> ResultCache::find(const std::string& fingerprint, std::int64_t m, std::int64_t n,
                                             std::int64_t c) const {
    std::shared_lock lock(mu_);
    const auto it = entries_.find(Key{fingerprint, m, n, c});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::int64_t ResultCache::max_c(const std::string& fingerprint, std::int64_t m, std::int64_t n) const {
    std::shared_lock lock(mu_);
    auto it = entries_.lower_bound(Key{fingerprint, m, n, INT64_MAX});
    if (it == entries_.begin()) return 0;
    --it;
    const auto& [fp, km, kn, kc] = it->first;
    return fp == fingerprint && km == m && kn == n ? kc : 0;
}

void ResultCache::append(const std::string& fingerprint, std::int64_t m, std::int64_t n, std::int64_t c,
                         std::complex<double> value, std::int64_t term_count) {
    std::unique_lock lock(mu_);
    auto [it, inserted] = entries_.try_emplace(Key{fingerprint, m, n, c}, CachedValue{value, term_count});
    if (!inserted) return;
    pending_ += format_record(fingerprint, m, n, c, value, term_count);
}

void ResultCache::flush() {
    std::unique_lock lock(mu_);
    if (pending_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file for append: " + path_.string());
    out << pending_;
    out.flush();
    if (!out) throw std::runtime_error("write to cache file failed: " + path_.string());
    pending_.clear();
}

std::size_t ResultCache::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

std::optional<std::filesystem::path> ResultCache::default_path() {
    const char* dir = std::getenv("HKLOOST_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir) / "kloosterman.cache";
}

}  // namespace hkloost
