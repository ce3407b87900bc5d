#pragma once

namespace thetasum {

// Kahan-compensated accumulator; drop-in for += loops over many terms.
template <typename T>
struct KahanAccumulator {
    T sum{0};
    T compensation{0};

    void operator+=(T value) {
        const T y = value - compensation;
        const T t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }

    explicit operator T() const { return sum; }
};

}  // namespace thetasum
