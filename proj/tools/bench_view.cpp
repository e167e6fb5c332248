// bench_view -- compares the OpenMP bounded-view kernel against the
// serial reference on the bundled presentations.
#include <chrono>
#include <iostream>

#include "infgraph/json_io.hpp"

using namespace infgraph;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename P>
static void bench(const std::string& name, const P& p, std::size_t maxLen) {
    auto t0 = Clock::now();
    Graph serial = bounded_view(p, maxLen, false);
    double tSerial = ms_since(t0);
    t0 = Clock::now();
    Graph parallel = bounded_view(p, maxLen, true);
    double tParallel = ms_since(t0);
    bool same = serial == parallel;
    std::cout << name << "  max-len " << maxLen << "  vertices " << serial.vertices.size()
              << "  arcs " << serial.arcs.size() << "\n"
              << "  serial   " << tSerial << " ms\n"
              << "  parallel " << tParallel << " ms  (x" << (tSerial / tParallel)
              << ", identical: " << (same ? "yes" : "NO") << ")\n";
    if (!same) std::exit(1);
}

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    auto fig2 = std::get<RationalGraphPresentation>(load_presentation(dir + "/fig2.json"));
    auto ladder = std::get<PrefixRecPresentation>(load_presentation(dir + "/ladder.json"));
    bench("fig2 (rational)", fig2, 9);
    bench("ladder (prefrec)", ladder, 12);
    return 0;
}
