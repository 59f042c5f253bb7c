#pragma once
// SHA-256 digests (OpenSSL EVP) for cache sidecars and run-manifest file
// fingerprints.
#include <string>

namespace primelab {

// Hex digest of a byte string.
std::string sha256_hex(const std::string& data);

// Hex digest of a file's contents; throws error(errc::io) if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace primelab
