#include "primelab/sha256.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

#include "primelab/errors.hpp"

namespace primelab {

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned len) {
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

struct evp_ctx {
    EVP_MD_CTX* ctx;
    evp_ctx() : ctx(EVP_MD_CTX_new()) {
        if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1)
            throw error(errc::io, "sha256: failed to initialize digest context");
    }
    ~evp_ctx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::string sha256_hex(const std::string& data) {
    evp_ctx c;
    if (EVP_DigestUpdate(c.ctx, data.data(), data.size()) != 1)
        throw error(errc::io, "sha256: digest update failed");
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(c.ctx, digest, &len) != 1)
        throw error(errc::io, "sha256: digest finalization failed");
    return digest_to_hex(digest, len);
}

std::string sha256_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw error(errc::io, "sha256: cannot open " + path);
    evp_ctx c;
    std::array<char, 1 << 16> buf;
    size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
        if (EVP_DigestUpdate(c.ctx, buf.data(), got) != 1) {
            std::fclose(f);
            throw error(errc::io, "sha256: digest update failed for " + path);
        }
    }
    bool bad = std::ferror(f);
    std::fclose(f);
    if (bad) throw error(errc::io, "sha256: read error on " + path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(c.ctx, digest, &len) != 1)
        throw error(errc::io, "sha256: digest finalization failed");
    return digest_to_hex(digest, len);
}

}  // namespace primelab
