#include "regen/gf256.hpp"

namespace regen::gf {

std::uint8_t pow(std::uint8_t b, unsigned e) {
    std::uint8_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, b);
        b = mul(b, b);
        e >>= 1;
    }
    return acc;
}

}  // namespace regen::gf
