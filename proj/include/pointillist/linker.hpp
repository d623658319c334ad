#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pointillist/gram_store.hpp"
#include "pointillist/phrase.hpp"

namespace pointillist {

// Trend linking by tf-idf cosine. Documents are local calendar days, tf is a
// gram's occurrence count inside the cluster window, idf = ln(days / (1 + df))
// floored at zero.

using WeightVector = std::map<Gram, double>;

struct TrendCluster {
    Gram seed;
    std::vector<PhraseCandidate> phrases;
    BinRange window;
    WeightVector vector;  // filled by cluster_vector
};

struct ClusterVector {
    WeightVector weights;
    bool all_zero = false;  // every weight was zero; `weights` is empty
};

struct TrendLink {
    Gram a;
    Gram b;
    double similarity = 0.0;
};

inline constexpr double kDefaultLinkThreshold = 0.5;

/// Throws ParameterError if corpus_days < 1.
double idf(const GramStore& store, GramView gram, std::int64_t corpus_days);

/// Number of local days spanned by the store's bin range (0 when empty).
std::int64_t corpus_days(const GramStore& store);

/// L2-normalizes nonnegative raw weights, dropping zeros.
ClusterVector normalize_weights(const WeightVector& raw);

/// Primary-order grams of all phrases, weighted by in-window count times idf.
/// Throws ParameterError if the cluster has no phrases.
ClusterVector cluster_vector(const GramStore& store, const TrendCluster& cluster, BinRange window);

/// Cosine of the two normalized vectors clamped to [0, 1]. Throws
/// UndefinedLinkError if either vector is empty.
TrendLink link(const TrendCluster& a, const TrendCluster& b);

double cosine(const WeightVector& a, const WeightVector& b);

} // namespace pointillist
