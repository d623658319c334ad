#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pointillist/gram_store.hpp"
#include "pointillist/linker.hpp"
#include "pointillist/phrase.hpp"
#include "pointillist/trends.hpp"

namespace pointillist {

// Line-delimited JSON records emitted by the command line tool.

std::string stats_record(const StoreStats& stats);
std::string trend_record(const TrendCandidate& candidate);
std::string phrase_record(const PhraseCandidate& phrase, GramView seed, LocalDay center,
                          BinRange window);
std::string link_record(const TrendLink& link, bool linked);

/// Rebuilds a cluster from phrase records (the connect output). All records
/// must share one seed. Throws RecordError.
TrendCluster read_cluster(std::istream& in);

/// RFC 4180 quoting when the field holds a comma, quote, or line break.
std::string csv_field(std::string_view field);

} // namespace pointillist
