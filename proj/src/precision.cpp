#include "subdiffcq/precision.hpp"

#include <atomic>

namespace subdiffcq::prec {

namespace {
std::atomic<unsigned> g_bits{256};

unsigned bits_to_digits(unsigned bits) {
    // floor(bits * log10(2)) with a little headroom so that the MPFR
    // significand is at least `bits` wide.
    return static_cast<unsigned>(static_cast<double>(bits) * 0.3010299956639812) + 2;
}
} // namespace

void set_working_bits(unsigned bits) {
    if (bits < 24 || bits > 16384)
        throw std::invalid_argument("working precision must be in [24, 16384] bits");
    g_bits.store(bits);
    apply_thread_precision();
}

unsigned working_bits() { return g_bits.load(); }

unsigned working_digits() { return bits_to_digits(g_bits.load()); }

void apply_thread_precision() {
    Real::default_precision(bits_to_digits(g_bits.load()));
}

Real at_working(const Real& x) {
    Real y = x;
    y.precision(working_digits());
    return y;
}

Real tolerance(unsigned slack) {
    unsigned d = working_digits();
    int e = (d > slack) ? static_cast<int>(d - slack) : 1;
    return pow(Real(10), -e);
}

} // namespace subdiffcq::prec
