// Compares the serial reference scan against the OpenMP kernel and checks
// that they produce identical hit lists.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "lerch/scanner.hpp"

using namespace lerch;
using clk = std::chrono::steady_clock;

static double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
    u64 hi = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    std::vector<ScanTarget> targets = {
        ScanTarget::parse("q2"),
        ScanTarget::parse("s:8:0"),
        ScanTarget::parse("s:6:2"),
    };

    auto t0 = clk::now();
    auto serial = scan_serial(5, hi, targets);
    auto t1 = clk::now();
    auto parallel = scan(5, hi, targets);
    auto t2 = clk::now();

    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::cout << "range 5.." << hi << ", " << serial.primes_seen << " primes, "
              << serial.hits.size() << " hits\n";
    std::cout << "serial:   " << ts << " s\n";
    std::cout << "parallel: " << tp << " s  (speedup " << (tp > 0 ? ts / tp : 0) << "x)\n";

    if (serial.hits != parallel.hits || serial.primes_seen != parallel.primes_seen) {
        std::cout << "MISMATCH between serial and parallel results\n";
        return 1;
    }
    std::cout << "results identical\n";
    return 0;
}
