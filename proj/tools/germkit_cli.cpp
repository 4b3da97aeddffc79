#include "germkit/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace germkit;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Options {
    std::string germ;
    std::string out;
    std::string svg;
    std::string radii;
    bool timing = false;
    bool force_numeric = false;
    AnalysisConfig config;
};

/// "a:b:k" -> k log-spaced radii from a down to b.
std::vector<double> parse_radii(const std::string &text) {
    std::istringstream in(text);
    double a = 0, b = 0;
    int k = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> a >> c1 >> b >> c2 >> k) || c1 != ':' || c2 != ':' || !in.eof())
        throw PreconditionError("--radii expects a:b:k, got '" + text + "'");
    return log_spaced(a, b, k);
}

AnalysisConfig finish_config(const Options &o) {
    AnalysisConfig c = o.config;
    if (!o.radii.empty()) c.radii = c.height_radii = parse_radii(o.radii);
    c.force_numeric_knot = o.force_numeric;
    return c;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text << '\n';
    if (!f) throw Error("write to '" + path + "' failed");
}

void emit_svg(const std::optional<KnotReport> &knot, const std::string &path) {
    if (path.empty()) return;
    if (!knot || !knot->diagram) {
        std::cerr << "no link diagram was drawn (certificate route or knot stage failed); " << path << " not written\n";
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    write_svg(*knot->diagram, f);
}

bool limit_failure(const AnalysisReport &r) {
    return std::any_of(r.stages.begin(), r.stages.end(), [](const StageRecord &s) { return s.limit; });
}

int cmd_analyze(const Options &o) {
    auto start = std::chrono::steady_clock::now();
    AnalysisReport r = analyze(read_germ_file(o.germ), finish_config(o));
    Json j = to_json(r);
    if (o.timing)
        j["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    emit(j.dump(2), o.out);
    emit_svg(r.knot, o.svg);
    if (!o.out.empty()) {
        std::cerr << to_string(r.verdict.status);
        if (r.verdict.certificate) std::cerr << ' ' << to_string(*r.verdict.certificate);
        std::cerr << '\n';
    }
    return limit_failure(r) ? kExitLimit : 0;
}

int cmd_jet(const Options &o) {
    MapGerm m = read_germ_file(o.germ);
    int c = corank(m);
    std::ostringstream s;
    s << to_string(classify_2jet(m)) << " (corank " << c << ")";
    if (c == 1) {
        PrenormalForm f = prenormalize(m, o.config.degree);
        s << "\nprenormal: " << f.series[0].to_string(kNamesXY);
        for (std::size_t i = 1; i < 4; ++i) s << ", " << f.series[i].to_string(kNamesXY);
        s << "\norders: " << f.orders[0].to_string() << ' ' << f.orders[1].to_string() << ' ' << f.orders[2].to_string();
        if (f.shear_slot) s << "\nshear slot: " << *f.shear_slot;
        for (const auto &ch : f.changes) s << "\nchange: " << describe(ch);
        for (const auto &n : f.notices) s << "\nnotice: " << n;
    }
    emit(s.str(), o.out);
    return 0;
}

int cmd_cone(const Options &o) {
    emit(to_json(tangent_cone(read_germ_file(o.germ), o.config.degree)).dump(2), o.out);
    return 0;
}

int cmd_polar(const Options &o) {
    AnalysisConfig c = finish_config(o);
    PrenormalForm f = prenormalize(read_germ_file(o.germ), c.degree);
    PolarData data = analyze_polar(f, c.height_radii);
    emit(to_json(data, height_width_test(data)).dump(2), o.out);
    return 0;
}

int cmd_knot(const Options &o) {
    AnalysisConfig c = finish_config(o);
    KnotOptions ko;
    ko.epsilon = c.epsilon;
    ko.resolution = c.link_resolution;
    ko.seed = c.seed;
    ko.force_numeric = c.force_numeric_knot;
    ko.degree = c.degree;
    KnotReport k = knot_report(read_germ_file(o.germ), ko);
    emit(to_json(k).dump(2), o.out);
    emit_svg(k, o.svg);
    return 0;
}

int cmd_arc(const Options &o) {
    AnalysisConfig c = finish_config(o);
    auto arc = arc_criterion_estimate(read_germ_file(o.germ), std::nullopt, c.radii, {c.resolution, c.seed, 64});
    emit(to_json(arc).dump(2), o.out);
    return 0;
}

struct CorpusRow {
    std::string name, corank, orbit, verdict, certificate, knot, failed;
    bool input_error = false, limit = false;
};

CorpusRow corpus_entry(const fs::path &file, const AnalysisConfig &config) {
    CorpusRow row;
    row.name = file.filename().string();
    try {
        AnalysisReport r = analyze(read_germ_file(file.string()), config);
        row.corank = std::to_string(r.corank);
        row.orbit = to_string(r.orbit);
        row.verdict = to_string(r.verdict.status);
        row.certificate = r.verdict.certificate ? std::string(to_string(*r.verdict.certificate)) : "-";
        row.knot = r.knot ? std::string(to_string(r.knot->verdict)) : "-";
        for (const auto &s : r.stages)
            if (s.status == StageStatus::Failed) row.failed += (row.failed.empty() ? "" : ",") + s.name;
        if (row.failed.empty()) row.failed = "-";
        row.limit = limit_failure(r);
    } catch (const Error &e) {
        row.input_error = true;
        row.corank = row.orbit = row.certificate = row.knot = "-";
        row.verdict = "INPUT_ERROR";
        row.failed = e.what();
    }
    return row;
}

int cmd_corpus(const std::string &dir, const Options &o) {
    if (!fs::is_directory(dir)) throw Error("not a directory: '" + dir + "'");
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".germ") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    AnalysisConfig config = finish_config(o);

    std::vector<CorpusRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) rows[i] = corpus_entry(files[i], config);
    };
    std::size_t n = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();

    std::ostringstream s;
    s << "| fixture | corank | orbit | verdict | certificate | knot | failed stages |\n";
    s << "|---|---|---|---|---|---|---|";
    bool input_error = false, limit = false;
    for (const auto &r : rows) {
        s << "\n| " << r.name << " | " << r.corank << " | " << r.orbit << " | " << r.verdict << " | " << r.certificate << " | "
          << r.knot << " | " << r.failed << " |";
        input_error = input_error || r.input_error;
        limit = limit || r.limit;
    }
    emit(s.str(), o.out);
    return input_error ? kExitInput : limit ? kExitLimit : 0;
}

void common(CLI::App *cmd, Options &o, bool germ = true) {
    if (germ) cmd->add_option("germ", o.germ, "germ file")->required();
    cmd->add_option("--degree", o.config.degree, "series truncation degree")->check(CLI::Range(2, 64));
    cmd->add_option("--radii", o.radii, "log-spaced radii a:b:k");
    cmd->add_option("--resolution", o.config.resolution, "mesh angular resolution")->check(CLI::Range(16, 4096));
    cmd->add_option("--seed", o.config.seed, "random seed");
    cmd->add_option("--epsilon", o.config.epsilon, "link sphere radius")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"germkit: normal embedding analysis of real surface germs in R^4"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));
    Options o;
    std::string corpus_dir;

    auto *analyze_cmd = app.add_subcommand("analyze", "full pipeline, JSON report");
    common(analyze_cmd, o);
    analyze_cmd->add_option("--svg", o.svg, "write the link diagram as SVG");
    analyze_cmd->add_flag("--force-numeric-knot", o.force_numeric, "skip the double-point certificate");
    analyze_cmd->add_flag("--timing", o.timing, "add wall-clock timing (report is then not reproducible)");
    auto *jet_cmd = app.add_subcommand("jet", "2-jet orbit and prenormal form");
    common(jet_cmd, o);
    auto *cone_cmd = app.add_subcommand("cone", "tangent cone");
    common(cone_cmd, o);
    auto *polar_cmd = app.add_subcommand("polar", "polar curve, discriminant, triangles, height/width");
    common(polar_cmd, o);
    auto *knot_cmd = app.add_subcommand("knot", "link of the germ and its knot type");
    common(knot_cmd, o);
    knot_cmd->add_option("--svg", o.svg, "write the link diagram as SVG");
    knot_cmd->add_flag("--force-numeric", o.force_numeric, "skip the double-point certificate");
    auto *arc_cmd = app.add_subcommand("arc-test", "numeric arc criterion on random arc pairs");
    common(arc_cmd, o);
    auto *corpus_cmd = app.add_subcommand("corpus", "analyze every .germ file in a directory");
    corpus_cmd->add_option("dir", corpus_dir, "directory")->required();
    common(corpus_cmd, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(o);
        if (*jet_cmd) return cmd_jet(o);
        if (*cone_cmd) return cmd_cone(o);
        if (*polar_cmd) return cmd_polar(o);
        if (*knot_cmd) return cmd_knot(o);
        if (*arc_cmd) return cmd_arc(o);
        if (*corpus_cmd) return cmd_corpus(corpus_dir, o);
    } catch (const TruncationError &e) {
        std::cerr << "truncation limit: " << e.what() << '\n';
        return kExitLimit;
    } catch (const DegenerateError &e) {
        std::cerr << "truncation limit: " << e.what() << '\n';
        return kExitLimit;
    } catch (const NumericError &e) {
        std::cerr << "numeric limit: " << e.what() << '\n';
        return kExitLimit;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
