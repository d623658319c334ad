#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <unordered_map>

#include <omp.h>

#include "pointillist/errors.hpp"
#include "pointillist/gram_store.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

namespace {

using CountMap = std::unordered_map<Gram, std::vector<BinCount>>;

struct IngestContext {
    std::vector<int> orders;
    const BoundarySet* boundaries;
    bool nfc;
};

IngestContext make_context(const IngestOptions& options)
{
    if (options.orders.empty()) throw ParameterError("at least one gram order is required");
    IngestContext ctx{{}, options.boundaries ? options.boundaries : &BoundarySet::defaults(),
                      options.nfc};
    for (int n : options.orders) {
        if (n < 1) throw ParameterError("gram order must be >= 1");
        if (std::find(ctx.orders.begin(), ctx.orders.end(), n) == ctx.orders.end())
            ctx.orders.push_back(n);
    }
    return ctx;
}

void check_posts(std::span<const Post> posts)
{
    for (const auto& p : posts)
        if (p.ts < 0) throw ParameterError("post " + p.id + " has a negative timestamp");
}

void count_post(const Post& post, const IngestContext& ctx, CountMap& counts)
{
    const TimeBin bin = bin_of(post.ts);
    const std::u32string text = ctx.nfc ? to_nfc(post.text) : post.text;
    for (const auto& segment : normalize(text, *ctx.boundaries)) {
        const GramView seg(segment);
        for (int n : ctx.orders) {
            const auto order = static_cast<std::size_t>(n);
            for (std::size_t i = 0; i + order <= seg.size(); ++i) {
                auto& runs = counts[Gram(seg.substr(i, order))];
                if (!runs.empty() && runs.back().bin == bin)
                    ++runs.back().count;
                else
                    runs.push_back({bin, 1});
            }
        }
    }
}

// Sorts a gram's runs by bin and folds repeated bins together.
GramSeries finish_series(Gram gram, std::vector<BinCount> runs)
{
    std::sort(runs.begin(), runs.end(),
              [](const BinCount& a, const BinCount& b) { return a.bin < b.bin; });
    GramSeries out{std::move(gram), {}, 0};
    out.runs.reserve(runs.size());
    for (const auto& r : runs) {
        if (!out.runs.empty() && out.runs.back().bin == r.bin)
            out.runs.back().count += r.count;
        else
            out.runs.push_back(r);
        out.total += r.count;
    }
    return out;
}

std::vector<GramSeries> finish_all(CountMap counts)
{
    std::vector<GramSeries> out;
    out.reserve(counts.size());
    for (auto& [gram, runs] : counts) out.push_back(finish_series(gram, std::move(runs)));
    return out;
}

} // namespace

GramStore ingest_serial(std::span<const Post> posts, const IngestOptions& options)
{
    const IngestContext ctx = make_context(options);
    check_posts(posts);
    CountMap counts;
    for (const auto& post : posts) count_post(post, ctx, counts);
    return GramStore::from_series(finish_all(std::move(counts)), ctx.orders, options.tz);
}

GramStore ingest(std::span<const Post> posts, const IngestOptions& options)
{
    const IngestContext ctx = make_context(options);
    check_posts(posts);
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    const auto shards = static_cast<std::size_t>(threads);
    const auto n_posts = static_cast<std::ptrdiff_t>(posts.size());

    std::exception_ptr failure;
    std::vector<CountMap> local(shards);

    #pragma omp parallel num_threads(threads)
    {
        auto& counts = local[static_cast<std::size_t>(omp_get_thread_num())];
        #pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n_posts; ++i) {
            try {
                count_post(posts[static_cast<std::size_t>(i)], ctx, counts);
            } catch (...) {
                #pragma omp critical(pointillist_ingest_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    // Each shard owns the grams whose hash falls in it, so shards merge independently.
    std::vector<std::vector<GramSeries>> merged(shards);
    const std::hash<Gram> hasher;

    #pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(shards); ++s) {
        CountMap shard;
        for (const auto& counts : local) {
            for (const auto& [gram, runs] : counts) {
                if (hasher(gram) % shards != static_cast<std::size_t>(s)) continue;
                auto& dst = shard[gram];
                dst.insert(dst.end(), runs.begin(), runs.end());
            }
        }
        merged[static_cast<std::size_t>(s)] = finish_all(std::move(shard));
    }
    local.clear();

    std::vector<GramSeries> all;
    std::size_t total = 0;
    for (const auto& m : merged) total += m.size();
    all.reserve(total);
    for (auto& m : merged) std::move(m.begin(), m.end(), std::back_inserter(all));
    return GramStore::from_series(std::move(all), ctx.orders, options.tz);
}

} // namespace pointillist
