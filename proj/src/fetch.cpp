// Network side of the zeros module, kept in its own translation unit so the
// heavy HTTP header is compiled exactly once.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"
#include "primelab/sha256.hpp"
#include "primelab/zeros.hpp"
#include "zeros_internal.hpp"

namespace primelab {

namespace {

namespace fs = std::filesystem;

struct split_url {
    std::string base;  // scheme://host[:port]
    std::string path;  // /path, defaulted to /
};

split_url parse_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw error(errc::validation, "fetch_zeros: url lacks a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string read_sidecar(const fs::path& p) {
    std::ifstream in(p);
    std::string digest;
    in >> digest;
    return digest;
}

void write_file_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out) throw error(errc::io, "fetch_zeros: cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw error(errc::io, "fetch_zeros: write error on " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string download(const std::string& url, const FetchOptions& opt) {
    split_url parts = parse_url(url);
    std::string last_reason;
    for (int attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        if (attempt > 1)
            std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
        httplib::Client client(parts.base);
        client.set_connection_timeout(opt.connect_timeout_s, 0);
        client.set_read_timeout(opt.read_timeout_s, 0);
        client.set_follow_location(true);
        httplib::Result res = client.Get(parts.path);
        if (res && res->status == 200) return res->body;
        last_reason = res ? "HTTP status " + fmt_int(res->status)
                          : std::string(httplib::to_string(res.error()));
    }
    throw error(errc::network, "fetch_zeros: " + url + " failed after " +
                                   fmt_int(opt.max_attempts) + " attempts (" + last_reason +
                                   "); retry when the host is reachable");
}

}  // namespace

std::string fetch_zeros(const std::string& url, const std::string& cache_dir,
                        std::size_t count, const FetchOptions& opt) {
    if (count == 0) throw error(errc::validation, "fetch_zeros: count must be positive");
    fs::path dir(cache_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw error(errc::io, "fetch_zeros: cannot create cache dir " + cache_dir);

    fs::path cached = dir / (sha256_hex(url).substr(0, 16) + "-" + fmt_uint(count) + ".txt");
    fs::path sidecar = cached;
    sidecar += ".sha256";

    if (fs::exists(cached)) {
        if (!fs::exists(sidecar))
            throw error(errc::corrupt_cache, "fetch_zeros: cache entry " + cached.string() +
                                                 " has no checksum sidecar; remove it and " +
                                                 "re-fetch");
        std::string want = read_sidecar(sidecar);
        std::string have = sha256_file(cached.string());
        if (want != have)
            throw error(errc::corrupt_cache,
                        "fetch_zeros: checksum mismatch for " + cached.string() +
                            " (expected " + want + ", found " + have +
                            "); remove the entry and re-fetch");
        return cached.string();  // warm hit, no network traffic
    }

    if (opt.offline)
        throw error(errc::network,
                    "fetch_zeros: offline mode and cache miss for " + cached.string());

    std::string body = download(url, opt);
    std::istringstream in(body);
    std::vector<double> heights = parse_zero_lines(in, url);
    if (heights.size() < count)
        throw error(errc::insufficient_table,
                    "fetch_zeros: requested " + fmt_uint(count) + " zeros but " + url +
                        " provides " + fmt_uint(heights.size()));
    heights.resize(count);
    validate_zero_table(heights, url);

    std::string content = "# source: " + url + "\n# count: " + fmt_uint(count) + "\n";
    for (double g : heights) {
        content += fmt_double(g);
        content += '\n';
    }
    write_file_atomic(cached, content);
    write_file_atomic(sidecar, sha256_hex(content) + "\n");
    return cached.string();
}

}  // namespace primelab
