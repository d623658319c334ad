#include "pointillist/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointillist/errors.hpp"
#include "pointillist/gram_store.hpp"
#include "pointillist/linker.hpp"
#include "pointillist/phrase.hpp"
#include "pointillist/records.hpp"
#include "pointillist/snapshot.hpp"
#include "pointillist/synth.hpp"
#include "pointillist/trends.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

namespace {

namespace fs = std::filesystem;

constexpr const char* kSnapshotName = "store.pntl";
constexpr const char* kStoreEnv = "POINTILLIST_STORE";

fs::path snapshot_path(const std::string& dir) { return fs::path(dir) / kSnapshotName; }

GramStore open_store(const std::string& dir, bool allow_partial)
{
    const fs::path path = snapshot_path(dir);
    if (!fs::exists(path))
        throw SnapshotError(SnapshotError::Kind::Io, "no store snapshot at " + path.string());
    return load_snapshot(path, allow_partial);
}

// "YYYY-MM-DD" selects a whole local day (its first or last bin); anything
// else must be an ISO-8601 timestamp and selects the bin containing it.
TimeBin parse_bin_arg(const std::string& text, UtcOffset tz, bool range_end)
{
    if (text.size() == 10) {
        const BinRange day = bins_of_day(parse_date(text), tz);
        return range_end ? day.last : day.first;
    }
    return bin_of(parse_iso8601(text));
}

Gram parse_gram_arg(const std::string& text)
{
    return decode_utf8(text);
}

struct IngestArgs {
    std::string input;
    std::string store;
    std::vector<int> orders{3};
    std::string boundaries;
    std::string tz = "+08:00";
    bool nfc = false;
    int threads = 0;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err)
{
    IngestOptions options;
    options.orders = a.orders;
    options.tz = parse_utc_offset(a.tz);
    options.nfc = a.nfc;
    options.threads = a.threads;
    BoundarySet custom;
    if (!a.boundaries.empty()) {
        custom = BoundarySet::load(a.boundaries);
        options.boundaries = &custom;
    }

    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw Error("cannot open input " + a.input);

    std::vector<Post> posts;
    std::unordered_set<std::string> ids;
    std::string failure;
    std::string line;
    std::size_t line_no = 0;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            Post post = parse_post(line, line_no);
            if (!ids.insert(post.id).second)
                throw RecordError(RecordError::Kind::Duplicate, line_no, "duplicate post id " + post.id);
            posts.push_back(std::move(post));
        }
        if (in.bad()) failure = "read error on " + a.input + " after line " + std::to_string(line_no);
    } catch (const RecordError& e) {
        failure = e.what();
    }

    GramStore store = ingest(posts, options);
    if (!failure.empty()) store.mark_partial();
    fs::create_directories(a.store);
    save_snapshot(store, snapshot_path(a.store));
    if (!failure.empty()) {
        err << "error: " << failure << "\n"
            << "error: ingest aborted; snapshot written with the partial flag set\n";
        return kExitData;
    }
    out << stats_record(store.stats()) << '\n';
    return kExitOk;
}

struct TrendArgs {
    std::string store;
    std::string day;
    TrendParams params;
    bool allow_partial = false;
};

int cmd_trends(const TrendArgs& a, std::ostream& out, std::ostream& err)
{
    const GramStore store = open_store(a.store, a.allow_partial);
    const LocalDay day = parse_date(a.day);
    const TrendReport report = trending_grams(store, day, a.params);
    if (report.day_out_of_range) err << "warning: day " << a.day << " is outside the corpus bin range\n";
    for (const auto& c : report.candidates) out << trend_record(c) << '\n';
    return kExitOk;
}

struct ConnectArgs {
    std::string store;
    std::string seed;
    std::string center;
    int before = 5;
    int after = 5;
    ConnectParams params;
    std::string aggregation = "min";
    std::string method = "pearson";
    bool allow_partial = false;
};

int cmd_connect(const ConnectArgs& a, std::ostream& out, std::ostream&)
{
    const GramStore store = open_store(a.store, a.allow_partial);
    const Gram seed = parse_gram_arg(a.seed);
    if (!store.find(seed) || seed.size() != static_cast<std::size_t>(store.order()))
        throw NotFoundError("unknown seed gram " + a.seed);

    ConnectParams params = a.params;
    params.aggregation = a.aggregation == "mean" ? ScoreAggregation::Mean : ScoreAggregation::Min;
    params.method = a.method == "spearman" ? CorrelationMethod::Spearman : CorrelationMethod::Pearson;
    const ConnectionWindow cw{parse_date(a.center), a.before, a.after};
    const BinRange window = cw.resolve(store.tz());
    for (const auto& p : connect(store, seed, window, params))
        out << phrase_record(p, seed, cw.center, window) << '\n';
    return kExitOk;
}

struct LinkArgs {
    std::string store;
    std::string cluster_a;
    std::string cluster_b;
    std::string from;
    std::string to;
    double threshold = kDefaultLinkThreshold;
    bool allow_partial = false;
};

TrendCluster load_cluster(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open cluster file " + path);
    return read_cluster(in);
}

int cmd_link(const LinkArgs& a, std::ostream& out, std::ostream& err)
{
    const GramStore store = open_store(a.store, a.allow_partial);
    TrendCluster ca = load_cluster(a.cluster_a);
    TrendCluster cb = load_cluster(a.cluster_b);

    BinRange window{std::min(ca.window.first, cb.window.first), std::max(ca.window.last, cb.window.last)};
    if (!a.from.empty()) window.first = parse_bin_arg(a.from, store.tz(), false);
    if (!a.to.empty()) window.last = parse_bin_arg(a.to, store.tz(), true);

    for (auto* c : {&ca, &cb}) {
        ClusterVector v = cluster_vector(store, *c, window);
        if (v.all_zero) err << "warning: cluster " << encode_utf8(c->seed) << " has an all-zero tf-idf vector\n";
        c->vector = std::move(v.weights);
    }
    const TrendLink result = link(ca, cb);
    out << link_record(result, result.similarity >= a.threshold) << '\n';
    return kExitOk;
}

struct ExportArgs {
    std::string store;
    std::vector<std::string> grams;
    std::string from;
    std::string to;
    bool allow_partial = false;
};

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream&)
{
    const GramStore store = open_store(a.store, a.allow_partial);
    const BinRange window{parse_bin_arg(a.from, store.tz(), false), parse_bin_arg(a.to, store.tz(), true)};
    if (window.first > window.last) throw ParameterError("--from is after --to");

    std::vector<std::vector<std::uint64_t>> columns;
    out << "bin_start_iso";
    for (const auto& g : a.grams) {
        out << ',' << csv_field(g);
        columns.push_back(store.series(parse_gram_arg(g), window));
    }
    out << "\r\n";
    for (TimeBin b = window.first; b <= window.last; ++b) {
        out << format_iso8601_utc(b * kSecondsPerBin);
        for (const auto& col : columns) out << ',' << col[static_cast<std::size_t>(b - window.first)];
        out << "\r\n";
    }
    return kExitOk;
}

struct SynthArgs {
    std::string config;
    std::string out;
    std::string ledger;
};

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream&)
{
    std::ifstream in(a.config, std::ios::binary);
    if (!in) throw Error("cannot open synth config " + a.config);
    std::ostringstream text;
    text << in.rdbuf();
    const SynthCorpus corpus = generate(parse_synth_config(text.str()));

    std::ofstream corpus_out(a.out, std::ios::binary | std::ios::trunc);
    write_corpus(corpus_out, corpus.posts);
    std::ofstream ledger_out(a.ledger, std::ios::binary | std::ios::trunc);
    write_ledger(ledger_out, corpus.ledger);
    corpus_out.close();
    ledger_out.close();
    if (!corpus_out || !ledger_out) throw Error("failed writing synth output");

    nlohmann::ordered_json summary;
    summary["posts"] = corpus.posts.size();
    summary["events"] = corpus.ledger.events.size();
    summary["total_occurrences"] = corpus.ledger.total_occurrences;
    out << summary.dump() << '\n';
    return kExitOk;
}

void add_store_option(CLI::App* cmd, std::string& target)
{
    cmd->add_option("--store", target, "Store directory")->envname(kStoreEnv)->required();
}

void add_partial_flag(CLI::App* cmd, bool& target)
{
    cmd->add_flag("--allow-partial", target, "Load a snapshot from an incomplete ingest");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lexicon-free trend mining over character n-grams", "pointillist"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand("ingest", "Build a store snapshot from post records");
    ingest_cmd->add_option("--input", ingest_args.input, "Line-delimited post records")->required();
    add_store_option(ingest_cmd, ingest_args.store);
    ingest_cmd->add_option("--n", ingest_args.orders, "Gram orders; the first is used for connect")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ingest_cmd->add_option("--boundaries", ingest_args.boundaries, "Boundary scalar file");
    ingest_cmd->add_option("--tz", ingest_args.tz, "UTC offset for calendar days")->capture_default_str();
    ingest_cmd->add_flag("--nfc", ingest_args.nfc, "Apply NFC before gram extraction");
    ingest_cmd->add_option("--threads", ingest_args.threads, "Worker threads (0: OpenMP default)");

    std::string stats_store;
    bool stats_partial = false;
    auto* stats_cmd = app.add_subcommand("stats", "Print store statistics");
    add_store_option(stats_cmd, stats_store);
    add_partial_flag(stats_cmd, stats_partial);

    TrendArgs trend_args;
    auto* trends_cmd = app.add_subcommand("trends", "List bursting grams for a day");
    add_store_option(trends_cmd, trend_args.store);
    trends_cmd->add_option("--day", trend_args.day, "Local day YYYY-MM-DD")->required();
    trends_cmd->add_option("--threshold", trend_args.params.threshold)->capture_default_str();
    trends_cmd->add_option("--min-count", trend_args.params.min_count)->capture_default_str();
    trends_cmd->add_option("--baseline-days", trend_args.params.baseline_days)->capture_default_str();
    trends_cmd->add_option("--epsilon", trend_args.params.epsilon)->capture_default_str();
    add_partial_flag(trends_cmd, trend_args.allow_partial);

    ConnectArgs connect_args;
    auto* connect_cmd = app.add_subcommand("connect", "Assemble phrases around a seed gram");
    add_store_option(connect_cmd, connect_args.store);
    connect_cmd->add_option("--seed", connect_args.seed, "Seed gram")->required();
    connect_cmd->add_option("--center", connect_args.center, "Center day YYYY-MM-DD")->required();
    connect_cmd->add_option("--before", connect_args.before)->capture_default_str();
    connect_cmd->add_option("--after", connect_args.after)->capture_default_str();
    connect_cmd->add_option("--r-min", connect_args.params.r_min)->capture_default_str();
    connect_cmd->add_option("--beam", connect_args.params.beam)->capture_default_str();
    connect_cmd->add_option("--max-len", connect_args.params.max_len)->capture_default_str();
    connect_cmd->add_option("--min-count", connect_args.params.min_count)->capture_default_str();
    connect_cmd->add_option("--aggregation", connect_args.aggregation)
        ->check(CLI::IsMember({"min", "mean"}))
        ->capture_default_str();
    connect_cmd->add_option("--method", connect_args.method)
        ->check(CLI::IsMember({"pearson", "spearman"}))
        ->capture_default_str();
    add_partial_flag(connect_cmd, connect_args.allow_partial);

    LinkArgs link_args;
    auto* link_cmd = app.add_subcommand("link", "Score similarity of two phrase clusters");
    add_store_option(link_cmd, link_args.store);
    link_cmd->add_option("--cluster-a", link_args.cluster_a, "connect output")->required();
    link_cmd->add_option("--cluster-b", link_args.cluster_b, "connect output")->required();
    link_cmd->add_option("--from", link_args.from, "Window start (date or ISO-8601)");
    link_cmd->add_option("--to", link_args.to, "Window end (date or ISO-8601)");
    link_cmd->add_option("--threshold", link_args.threshold)->capture_default_str();
    add_partial_flag(link_cmd, link_args.allow_partial);

    ExportArgs export_args;
    auto* export_cmd = app.add_subcommand("export", "Hourly series of grams as CSV");
    add_store_option(export_cmd, export_args.store);
    export_cmd->add_option("--grams", export_args.grams, "Comma-separated grams")->delimiter(',')->required();
    export_cmd->add_option("--from", export_args.from, "Start (date or ISO-8601)")->required();
    export_cmd->add_option("--to", export_args.to, "End (date or ISO-8601)")->required();
    add_partial_flag(export_cmd, export_args.allow_partial);

    std::string dump_store;
    bool dump_partial = false;
    auto* dump_cmd = app.add_subcommand("dump", "Text export: gram, bin, count per line");
    add_store_option(dump_cmd, dump_store);
    add_partial_flag(dump_cmd, dump_partial);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus and ground-truth ledger");
    synth_cmd->add_option("--config", synth_args.config, "JSON config")->required();
    synth_cmd->add_option("--out", synth_args.out, "Corpus output")->required();
    synth_cmd->add_option("--ledger", synth_args.ledger, "Ledger output")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest_args, out, err);
        if (stats_cmd->parsed()) {
            out << stats_record(open_store(stats_store, stats_partial).stats()) << '\n';
            return kExitOk;
        }
        if (trends_cmd->parsed()) return cmd_trends(trend_args, out, err);
        if (connect_cmd->parsed()) return cmd_connect(connect_args, out, err);
        if (link_cmd->parsed()) return cmd_link(link_args, out, err);
        if (export_cmd->parsed()) return cmd_export(export_args, out, err);
        if (dump_cmd->parsed()) {
            export_text(open_store(dump_store, dump_partial), out);
            return kExitOk;
        }
        if (synth_cmd->parsed()) return cmd_synth(synth_args, out, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

} // namespace pointillist
