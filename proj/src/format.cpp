#include "primelab/format.hpp"

#include <charconv>
#include <system_error>

namespace primelab {

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt_int(std::int64_t x) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt_uint(std::uint64_t x) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace primelab
