#include "pointillist/linker.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pointillist/errors.hpp"

namespace pointillist {

std::int64_t corpus_days(const GramStore& store)
{
    const auto range = store.stats().bin_range;
    if (!range) return 0;
    return local_day_of_bin(range->last, store.tz()) - local_day_of_bin(range->first, store.tz()) + 1;
}

double idf(const GramStore& store, GramView gram, std::int64_t days)
{
    if (days < 1) throw ParameterError("corpus_days must be >= 1");
    std::int64_t df = 0;
    if (const auto index = store.find(gram)) {
        LocalDay previous = 0;
        bool any = false;
        for (const auto& run : store.runs_at(*index)) {
            const LocalDay day = local_day_of_bin(run.bin, store.tz());
            if (!any || day != previous) ++df;
            previous = day;
            any = true;
        }
    }
    return std::max(0.0, std::log(static_cast<double>(days) / static_cast<double>(1 + df)));
}

ClusterVector normalize_weights(const WeightVector& raw)
{
    double norm_sq = 0.0;
    for (const auto& [gram, w] : raw) {
        if (w < 0.0) throw ParameterError("tf-idf weights must be nonnegative");
        norm_sq += w * w;
    }
    ClusterVector out;
    if (norm_sq == 0.0) {
        out.all_zero = true;
        return out;
    }
    const double norm = std::sqrt(norm_sq);
    for (const auto& [gram, w] : raw)
        if (w > 0.0) out.weights.emplace(gram, w / norm);
    return out;
}

ClusterVector cluster_vector(const GramStore& store, const TrendCluster& cluster, BinRange window)
{
    if (cluster.phrases.empty()) throw ParameterError("cluster has no phrases");
    std::set<Gram> grams;
    for (const auto& phrase : cluster.phrases)
        for (auto& g : extract_ngrams(phrase.text, store.order())) grams.insert(std::move(g));

    const std::int64_t days = std::max<std::int64_t>(1, corpus_days(store));
    WeightVector raw;
    for (const auto& g : grams)
        raw[g] = static_cast<double>(store.window_total(g, window)) * idf(store, g, days);
    return normalize_weights(raw);
}

double cosine(const WeightVector& a, const WeightVector& b)
{
    double dot = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return std::clamp(dot, 0.0, 1.0);
}

TrendLink link(const TrendCluster& a, const TrendCluster& b)
{
    if (a.vector.empty() || b.vector.empty())
        throw UndefinedLinkError("cannot link a cluster with an empty tf-idf vector");
    return {a.seed, b.seed, cosine(a.vector, b.vector)};
}

} // namespace pointillist
