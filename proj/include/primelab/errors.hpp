#pragma once
// Typed failures for the whole library.  The CLI maps kinds onto its exit
// codes: anything user-input shaped exits 2, anything resource shaped exits 3.
#include <stdexcept>
#include <string>

namespace primelab {

enum class errc {
    validation,          // bad parameter / config, broken invariant in input
    parse,               // malformed file content (carries line info in message)
    insufficient_table,  // zero table does not reach the required height
    domain,              // argument outside a formula's domain
    numeric,             // iteration or quadrature failed to converge
    capacity,            // sieve window beyond configured capacity
    resource,            // work or memory budget exceeded
    network,             // download failed (retryable)
    corrupt_cache,       // cached file contradicts its checksum sidecar
    io,                  // filesystem trouble
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

  private:
    errc kind_;
};

// Exit code contract: 0 ok, 1 check failure, 2 input/validation, 3 resource.
inline int exit_code_for(errc k) {
    switch (k) {
        case errc::validation:
        case errc::parse:
        case errc::insufficient_table:
        case errc::domain:
        case errc::numeric:
            return 2;
        default:
            return 3;
    }
}

}  // namespace primelab
