#include "pointillist/phrase.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "pointillist/errors.hpp"

namespace pointillist {

namespace {

struct BeamState {
    std::u32string text;
    double min_r = 1.0;
    double sum_r = 0.0;
    int edges = 0;
    std::string trace;

    double score(ScoreAggregation agg) const noexcept
    {
        if (edges == 0) return 1.0;
        return agg == ScoreAggregation::Min ? min_r : sum_r / edges;
    }
};

std::size_t occurrences(GramView text, GramView gram)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i + gram.size() <= text.size(); ++i)
        if (text.substr(i, gram.size()) == gram) ++count;
    return count;
}

void check_connect_params(const ConnectParams& p, int order)
{
    if (p.beam < 1) throw ParameterError("beam must be >= 1");
    if (p.max_len < order) throw ParameterError("max_len must be >= gram order");
    if (p.min_count < 1) throw ParameterError("min_count must be >= 1");
    if (p.max_gram_repeats < 1) throw ParameterError("max_gram_repeats must be >= 1");
}

} // namespace

BinRange ConnectionWindow::resolve(UtcOffset tz) const
{
    if (days_before < 0 || days_after < 0) throw ParameterError("connection window days must be >= 0");
    return bins_of_days(center - days_before, center + days_after, tz);
}

bool overlaps(GramView a, GramView b)
{
    if (a.empty() || a.size() != b.size()) throw ParameterError("overlap needs two grams of equal order");
    return a.substr(1) == b.substr(0, b.size() - 1);
}

std::vector<OverlapEdge> neighbor_edges(const GramStore& store, GramView current,
                                        std::span<const double> seed_series, BinRange window,
                                        Side side, double r_min, std::uint64_t min_count,
                                        CorrelationMethod method)
{
    if (window.first > window.last) throw ParameterError("window start is after window end");
    if (seed_series.size() != static_cast<std::size_t>(window.width()))
        throw ParameterError("seed series length does not match the window");
    const auto n = static_cast<std::size_t>(store.order());
    if (current.size() != n) throw ParameterError("current gram has the wrong order");

    const auto candidates = side == Side::Right ? store.grams_with_prefix(current.substr(1))
                                                : store.grams_with_suffix(current.substr(0, n - 1));
    std::vector<OverlapEdge> edges;
    for (const auto& cand : candidates) {
        const auto index = store.find(cand);
        if (!index || store.window_total_at(*index, window) < min_count) continue;
        const auto series = to_real(store.series(cand, window));
        const Correlation c = correlate(method, series, seed_series);
        if (c.r < r_min) continue;
        if (side == Side::Right)
            edges.push_back({Gram(current), cand, c.r});
        else
            edges.push_back({cand, Gram(current), c.r});
    }
    std::sort(edges.begin(), edges.end(), [side](const OverlapEdge& a, const OverlapEdge& b) {
        if (a.r != b.r) return a.r > b.r;
        return side == Side::Right ? a.right < b.right : a.left < b.left;
    });
    return edges;
}

bool phrase_order(const PhraseCandidate& a, const PhraseCandidate& b) noexcept
{
    if (a.score != b.score) return a.score > b.score;
    if (a.text.size() != b.text.size()) return a.text.size() > b.text.size();
    return a.text < b.text;
}

std::vector<PhraseCandidate> connect(const GramStore& store, GramView seed, BinRange window,
                                     const ConnectParams& params)
{
    const int order = store.order();
    check_connect_params(params, order);
    if (seed.size() != static_cast<std::size_t>(order)) throw ParameterError("seed has the wrong gram order");
    const auto seed_index = store.find(seed);
    if (!seed_index || store.total_at(*seed_index) == 0)
        throw NotFoundError("seed gram not in store");
    if (window.width() < 2) throw ParameterError("connection window must span at least 2 bins");

    const auto seed_series = to_real(store.series(seed, window));
    const auto n = static_cast<std::size_t>(order);
    const auto max_len = static_cast<std::size_t>(params.max_len);
    const auto agg = params.aggregation;

    std::map<std::pair<Gram, Side>, std::vector<OverlapEdge>> edge_cache;
    auto edges_of = [&](GramView gram, Side side) -> const std::vector<OverlapEdge>& {
        auto key = std::make_pair(Gram(gram), side);
        auto it = edge_cache.find(key);
        if (it == edge_cache.end()) {
            auto edges = neighbor_edges(store, gram, seed_series, window, side, params.r_min,
                                        params.min_count, params.method);
            it = edge_cache.emplace(std::move(key), std::move(edges)).first;
        }
        return it->second;
    };

    std::vector<PhraseCandidate> results{{Gram(seed), 1.0, ""}};
    std::unordered_set<std::u32string> seen{Gram(seed)};
    std::vector<BeamState> frontier{{Gram(seed), 1.0, 0.0, 0, ""}};

    while (!frontier.empty()) {
        std::vector<BeamState> next;
        for (const Side side : {Side::Right, Side::Left}) {
            for (const auto& state : frontier) {
                if (state.text.size() >= max_len) continue;
                const GramView text(state.text);
                const GramView current = side == Side::Right ? text.substr(text.size() - n) : text.substr(0, n);
                for (const auto& edge : edges_of(current, side)) {
                    const Gram& added = side == Side::Right ? edge.right : edge.left;
                    BeamState grown;
                    grown.text = side == Side::Right ? state.text + added.back()
                                                     : added.front() + state.text;
                    if (seen.contains(grown.text)) continue;
                    if (occurrences(grown.text, added) > static_cast<std::size_t>(params.max_gram_repeats))
                        continue;
                    grown.min_r = std::min(state.min_r, edge.r);
                    grown.sum_r = state.sum_r + edge.r;
                    grown.edges = state.edges + 1;
                    grown.trace = state.trace + (side == Side::Right ? 'R' : 'L');
                    seen.insert(grown.text);
                    next.push_back(std::move(grown));
                }
            }
        }

        std::stable_sort(next.begin(), next.end(), [agg](const BeamState& a, const BeamState& b) {
            const double sa = a.score(agg);
            const double sb = b.score(agg);
            if (sa != sb) return sa > sb;
            if (a.text.size() != b.text.size()) return a.text.size() > b.text.size();
            return a.text < b.text;
        });
        if (next.size() > static_cast<std::size_t>(params.beam)) next.resize(static_cast<std::size_t>(params.beam));
        for (const auto& s : next) results.push_back({s.text, s.score(agg), s.trace});
        frontier = std::move(next);
    }

    std::sort(results.begin(), results.end(), phrase_order);
    const auto cap = static_cast<std::size_t>(params.beam) * max_len;
    if (results.size() > cap) results.resize(cap);
    return results;
}

} // namespace pointillist
