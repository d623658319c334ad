// Times the serial reference kernels against the OpenMP ones on a synthetic
// corpus. Usage: bench_kernels [posts] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "pointillist/gram_store.hpp"
#include "pointillist/synth.hpp"
#include "pointillist/trends.hpp"
#include "pointillist/unicode.hpp"

using namespace pointillist;

namespace {

double best_of(int repeats, const std::function<void()>& fn)
{
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv)
{
    const long posts = argc > 1 ? std::atol(argv[1]) : 50000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    SynthConfig c;
    c.seed = 1;
    c.start_day = parse_date("2011-07-10");
    c.days = 30;
    c.posts_per_hour = static_cast<double>(posts) / (24.0 * c.days);
    c.min_items = 5;
    c.max_items = 10;
    c.vocabulary.size = 20000;
    c.vocabulary.min_len = 6;
    c.vocabulary.max_len = 12;
    c.vocabulary.span = 6000;
    c.record_counts = false;
    c.events = {{decode_utf8("万为开拓团纪念碑"), parse_date("2011-08-04"), 500, 0.5}};
    const auto corpus = generate(c);
    const LocalDay day = parse_date("2011-08-04");

    GramStore serial_store, parallel_store;
    const double t_ingest_serial = best_of(repeats, [&] { serial_store = ingest_serial(corpus.posts); });
    const double t_ingest_omp = best_of(repeats, [&] { parallel_store = ingest(corpus.posts); });
    TrendReport serial_report, parallel_report;
    const double t_trend_serial = best_of(repeats, [&] { serial_report = trending_grams_serial(serial_store, day); });
    const double t_trend_omp = best_of(repeats, [&] { parallel_report = trending_grams(parallel_store, day); });

    std::printf("posts %zu, occurrences %llu, distinct grams %zu, threads %d\n", corpus.posts.size(),
                static_cast<unsigned long long>(serial_store.stats().total_occurrences), serial_store.size(),
                omp_get_max_threads());
    std::printf("%-10s %12s %12s %8s %s\n", "kernel", "serial_s", "openmp_s", "speedup", "identical");
    std::printf("%-10s %12.4f %12.4f %8.2f %s\n", "ingest", t_ingest_serial, t_ingest_omp,
                t_ingest_serial / t_ingest_omp, serial_store == parallel_store ? "yes" : "NO");
    std::printf("%-10s %12.4f %12.4f %8.2f %s\n", "trending", t_trend_serial, t_trend_omp,
                t_trend_serial / t_trend_omp, serial_report.candidates == parallel_report.candidates ? "yes" : "NO");
    return serial_store == parallel_store && serial_report.candidates == parallel_report.candidates ? 0 : 1;
}
