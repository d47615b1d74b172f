// Copyright 2026 The twinstats Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinstats/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "twinstats/error.hpp"
#include "twinstats/fit.hpp"
#include "twinstats/scan.hpp"
#include "twinstats/serialize.hpp"
#include "twinstats/theory.hpp"

namespace fs = std::filesystem;

namespace twinstats::cli {

namespace {

// Carries an exit code out of a command.
struct Exit {
    int code;
    std::string message;
};

bool checked_mul(u64 a, u64 b, u64& out) {
    if (a != 0 && b > UINT64_MAX / a) return false;
    out = a * b;
    return true;
}

u64 parse_digits(std::string_view s, std::string_view whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw NumberError{"not a number: '" + std::string(whole) + "'", false};
    u64 v = 0;
    for (char c : s) {
        if (!checked_mul(v, 10, v) || v > UINT64_MAX - static_cast<u64>(c - '0'))
            throw NumberError{"number too large: '" + std::string(whole) + "'", true};
        v += static_cast<u64>(c - '0');
    }
    return v;
}

// ------------------------------------------------------------------ output

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string format_n(u64 n) {
    if (n != 0 && (n & (n - 1)) == 0) return "2^" + std::to_string(std::countr_zero(n));
    return std::to_string(n);
}

enum class Format { Text, Csv };

class Table {
  public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os, Format format) const {
        if (format == Format::Csv) {
            print_csv_row(os, header_);
            for (const auto& r : rows_) print_csv_row(os, r);
            return;
        }
        std::vector<std::size_t> width(header_.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
        };
        widen(header_);
        for (const auto& r : rows_) widen(r);
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) os << "  ";
                os << std::string(width[i] - r[i].size(), ' ') << r[i];
            }
            os << '\n';
        };
        line(header_);
        std::size_t total = 0;
        for (auto w : width) total += w;
        os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
        for (const auto& r : rows_) line(r);
    }

  private:
    static void print_csv_row(std::ostream& os, const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

Format parse_format(const std::string& s) { return s == "csv" ? Format::Csv : Format::Text; }

// ------------------------------------------------------------------ inputs

u64 parse_bound(const std::string& text, const char* flag) {
    try {
        return parse_count(text);
    } catch (const NumberError& e) {
        throw Exit{e.overflow ? kResource : kUsage, std::string(flag) + ": " + e.message};
    }
}

double c2_for(C2Mode mode) {
    return mode == C2Mode::Literature ? kTwinPrimeConstantLiterature : default_twin_prime_constant().value;
}

std::vector<Checkpoint> load_checkpoints(const std::vector<std::string>& files, const std::string& dir) {
    std::vector<fs::path> paths(files.begin(), files.end());
    if (paths.empty() && !dir.empty()) {
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            auto name = entry.path().filename().string();
            if (name.starts_with("checkpoint_") && name.ends_with(".json")) paths.push_back(entry.path());
        }
        if (ec) throw Exit{kUsage, "cannot list " + dir + ": " + ec.message()};
    }
    if (paths.empty()) throw Exit{kUsage, "no checkpoint files given (pass files or --out DIR)"};

    std::vector<Checkpoint> out;
    for (const auto& p : paths) {
        try {
            out.push_back(checkpoint_from_json(read_file(p)));
        } catch (const FormatError& e) {
            throw Exit{kData, p.string() + ": " + e.what()};
        }
    }
    std::sort(out.begin(), out.end(), [](const Checkpoint& a, const Checkpoint& b) { return a.n < b.n; });
    return out;
}

void add_checkpoint_inputs(CLI::App* sub, std::vector<std::string>& files, std::string& dir) {
    sub->add_option("files", files, "Checkpoint JSON files");
    sub->add_option("--out", dir, "Directory searched for checkpoint_*.json when no files are given");
}

// ------------------------------------------------------------------ scan

struct ScanArgs {
    std::string n_max;
    std::string checkpoint_start;
    u64 checkpoint_ratio = 4;
    std::vector<std::string> checkpoint_at;
    unsigned segment_bits = kDefaultSegmentBits;
    unsigned threads = 0;
    std::string out = ".";
    std::string resume;
    std::string c2 = "computed";
    std::string format = "text";
};

RunConfig make_config(const ScanArgs& a) {
    RunConfig cfg;
    cfg.n_max = parse_bound(a.n_max, "--n-max");
    if (cfg.n_max > kMaxBound) throw Exit{kResource, "--n-max exceeds 2^44"};
    if (cfg.n_max < 2) throw Exit{kUsage, "--n-max must be >= 2"};
    if (a.checkpoint_ratio < 2) throw Exit{kUsage, "--checkpoint-ratio must be >= 2"};
    cfg.checkpoint_ratio = a.checkpoint_ratio;
    if (a.checkpoint_start.empty()) {
        cfg.checkpoint_start = std::min(cfg.checkpoint_start, cfg.n_max);
    } else {
        cfg.checkpoint_start = parse_bound(a.checkpoint_start, "--checkpoint-start");
        if (cfg.checkpoint_start > cfg.n_max) throw Exit{kUsage, "--checkpoint-start exceeds --n-max"};
    }
    for (const auto& s : a.checkpoint_at) {
        u64 n = parse_bound(s, "--checkpoint-at");
        if (n > cfg.n_max) throw Exit{kUsage, "--checkpoint-at " + s + " exceeds --n-max"};
        cfg.extra_checkpoints.push_back(n);
    }
    if (a.segment_bits < 6 || a.segment_bits > 32) throw Exit{kUsage, "--segment-bits must lie in [6, 32]"};
    cfg.segment_bits = a.segment_bits;
    cfg.threads = a.threads != 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    cfg.output_dir = a.out;
    if (!a.resume.empty()) cfg.resume_from = a.resume;
    cfg.c2_mode = a.c2 == "literature" ? C2Mode::Literature : C2Mode::Computed;
    return cfg;
}

void ensure_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Exit{kUsage, "output directory not usable: " + dir.string()};
    auto probe = dir / ".twinstats_probe";
    {
        std::ofstream f(probe);
        if (!f) throw Exit{kUsage, "output directory not writable: " + dir.string()};
    }
    fs::remove(probe, ec);
}

int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg = make_config(args);
    ensure_writable(cfg.output_dir);

    ScanState initial;
    if (cfg.resume_from) {
        try {
            initial = state_from_json(read_file(*cfg.resume_from));
        } catch (const FormatError& e) {
            throw Exit{kData, cfg.resume_from->string() + ": " + e.what()};
        }
        if (initial.position > cfg.n_max + 1)
            throw Exit{kUsage, "resume file already covers beyond --n-max"};
    }

    ScanOptions opts;
    opts.n_max = cfg.n_max;
    opts.checkpoints = geometric_schedule(cfg.checkpoint_start, cfg.checkpoint_ratio, cfg.n_max);
    opts.checkpoints.insert(opts.checkpoints.end(), cfg.extra_checkpoints.begin(), cfg.extra_checkpoints.end());
    opts.checkpoints.push_back(cfg.n_max);
    opts.segment_bits = cfg.segment_bits;
    opts.threads = cfg.threads;

    const fs::path resume_path = cfg.output_dir / "resume.json";
    std::vector<Checkpoint> written;
    ScanHooks hooks;
    hooks.on_checkpoint = [&](const Checkpoint& cp) {
        write_file_atomic(cfg.output_dir / checkpoint_filename(cp.n), checkpoint_to_json(cp));
        written.push_back(cp);
    };
    hooks.on_state = [&](const ScanState& s) { write_file_atomic(resume_path, state_to_json(s)); };

    auto t0 = std::chrono::steady_clock::now();
    run_scan(opts, std::move(initial), hooks);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << "scanned through " << cfg.n_max << " in " << fixed(secs, 2) << " s (" << cfg.threads << " sieve threads)\n";

    Table t({"N", "pi", "pi2", "sum_mu", "conserved", "d_max", "s_max", "champion", "sum_s_mu-(pi-2pi2)"});
    for (const auto& cp : written) {
        t.add({format_n(cp.n), std::to_string(cp.pi), std::to_string(cp.pi2), std::to_string(cp.sep_hist.total()),
               cp.conserves_primes() && cp.twin_count_identity() ? "yes" : "NO", std::to_string(cp.d_max),
               std::to_string(cp.s_max), cp.gap_hist.empty() ? "-" : std::to_string(champion(cp.gap_hist)),
               std::to_string(cp.separation_sum_residual())});
    }
    t.print(out, parse_format(args.format));
    return kOk;
}

// ------------------------------------------------------------------ table

struct FitArgs {
    std::vector<std::string> files;
    std::string dir;
    std::string c2 = "computed";
    u64 skip_head = FitProtocol{}.skip_head;
    double keep_fraction = FitProtocol{}.keep_fraction;
    std::string keep_basis = "all";
    bool weighted = false;
    bool sensitivity = false;
    std::string fit_dir;
    std::string format = "text";
    std::size_t top = 5;
};

FitProtocol protocol_from(const FitArgs& a) {
    FitProtocol p;
    p.skip_head = a.skip_head;
    p.keep_fraction = a.keep_fraction;
    p.basis = a.keep_basis == "remaining" ? KeepBasis::RemainingBins : KeepBasis::AllBins;
    p.weighted = a.weighted;
    return p;
}

C2Mode c2_mode_from(const std::string& s) { return s == "literature" ? C2Mode::Literature : C2Mode::Computed; }

int cmd_table(const FitArgs& args, std::ostream& out, std::ostream& err) {
    auto cps = load_checkpoints(args.files, args.dir);
    const double c2 = c2_for(c2_mode_from(args.c2));
    const FitProtocol protocol = protocol_from(args);
    const Format format = parse_format(args.format);
    if (!args.fit_dir.empty()) ensure_writable(args.fit_dir);

    Table t({"N", "A_exp/A_theor", "B_exp/B_theor", "A_exp/A_asympt", "B_exp/B_asympt", "A_exp/A_asympt_printed",
             "points", "r2"});
    for (const auto& cp : cps) {
        std::vector<std::string> row{format_n(cp.n)};
        try {
            auto pred = predict(cp.n, cp.pi, cp.pi2, c2);  // degenerate N outranks a thin histogram
            auto fit = fit_exponential(cp.sep_hist, protocol, cp.n);
            auto r = comparison_row(cp, fit, pred);
            row.insert(row.end(), {fixed(r.a_ratio_theor, 6), fixed(r.b_ratio_theor, 6), fixed(r.a_ratio_asympt, 6),
                                   fixed(r.b_ratio_asympt, 6)});
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6e", fit.a_exp / pred.a_asympt_printed);
            row.insert(row.end(), {buf, std::to_string(fit.points_used), fixed(fit.r_squared, 6)});
            if (!args.fit_dir.empty())
                write_file_atomic(fs::path(args.fit_dir) / ("fit_" + std::to_string(cp.n) + ".json"),
                                  fit_report_json(fit));
        } catch (const InsufficientDataError&) {
            row.insert(row.end(), {"insufficient data", "", "", "", "", "", ""});
        } catch (const DomainError&) {
            row.insert(row.end(), {"degenerate regime", "", "", "", "", "", ""});
        }
        t.add(std::move(row));
    }
    t.print(out, format);
    if (format == Format::Text) {
        out << "\nc2 = " << fixed(c2, 8) << "; A_asympt = c2^2 N / ln^3 N. The printed form c2^2 N^2 / ln^3 N is "
            << "dimensionally inconsistent with A = pi2^2/(pi - 2 pi2); its ratio is shown in the last ratio column.\n";
    }

    if (args.sensitivity) {
        out << '\n';
        Table s({"N", "skip_head", "keep", "basis", "points", "A_exp/A_theor", "B_exp/B_theor"});
        for (const auto& cp : cps) {
            std::vector<FitProtocol> grid{protocol};
            for (u64 skip : {10, 15, 20})
                for (double keep : {0.5, 0.6, 0.7}) grid.push_back({skip, keep, protocol.basis, protocol.weighted});
            for (const auto& p : grid) {
                std::vector<std::string> row{format_n(cp.n), std::to_string(p.skip_head), fixed(p.keep_fraction, 2),
                                             p.basis == KeepBasis::AllBins ? "all" : "remaining"};
                try {
                    auto fit = fit_exponential(cp.sep_hist, p, cp.n);
                    auto pred = predict(cp.n, cp.pi, cp.pi2, c2);
                    auto r = comparison_row(cp, fit, pred);
                    row.insert(row.end(), {std::to_string(fit.points_used), fixed(r.a_ratio_theor, 6),
                                           fixed(r.b_ratio_theor, 6)});
                } catch (const Error&) {
                    row.insert(row.end(), {"-", "-", "-"});
                }
                s.add(std::move(row));
            }
        }
        s.print(out, format);
    }
    (void)err;
    return kOk;
}

// ------------------------------------------------------------------ smax

int cmd_smax(const FitArgs& args, std::ostream& out) {
    auto cps = load_checkpoints(args.files, args.dir);
    const double c2 = c2_for(c2_mode_from(args.c2));
    Table t({"N", "s_max_empirical", "s_max_paper", "s_max_derived", "s_max_asympt", "empirical/derived"});
    for (const auto& cp : cps) {
        std::vector<std::string> row{format_n(cp.n), std::to_string(cp.s_max)};
        try {
            auto sm = predict_smax(cp.pi, cp.pi2, c2);
            row.insert(row.end(), {fixed(sm.paper, 3), fixed(sm.derived, 3), fixed(smax_asympt(cp.n, c2), 3),
                                   fixed(static_cast<double>(cp.s_max) / sm.derived, 4)});
        } catch (const DegenerateRegimeError&) {
            row.insert(row.end(), {"degenerate regime", "", fixed(smax_asympt(cp.n, c2), 3), ""});
        }
        t.add(std::move(row));
    }
    t.print(out, parse_format(args.format));
    return kOk;
}

// ------------------------------------------------------------------ champions

int cmd_champions(const FitArgs& args, std::ostream& out) {
    auto cps = load_checkpoints(args.files, args.dir);
    Table t({"N", "champion", "count", "top_bins", "m(6)", "m(12)", "m(30)", "m(210)"});
    for (const auto& cp : cps) {
        if (cp.gap_hist.empty()) {
            t.add({format_n(cp.n), "-", "0", "", "0", "0", "0", "0"});
            continue;
        }
        u64 d = champion(cp.gap_hist);
        std::vector<std::pair<u64, u64>> bins(cp.gap_hist.bins().begin(), cp.gap_hist.bins().end());
        std::stable_sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
        std::string top;
        for (std::size_t i = 0; i < bins.size() && i < args.top; ++i)
            top += (i ? " " : "") + std::to_string(bins[i].first) + ":" + std::to_string(bins[i].second);
        t.add({format_n(cp.n), std::to_string(d), std::to_string(cp.gap_hist.count(d)), top,
               std::to_string(cp.gap_hist.count(6)), std::to_string(cp.gap_hist.count(12)),
               std::to_string(cp.gap_hist.count(30)), std::to_string(cp.gap_hist.count(210))});
    }
    t.print(out, parse_format(args.format));
    return kOk;
}

// ------------------------------------------------------------------ export

int cmd_export(const std::string& file, const std::string& which, const std::string& output, std::ostream& out) {
    auto cps = load_checkpoints({file}, "");
    const auto& cp = cps.front();
    std::string csv;
    if (which == "gap")
        csv = to_csv(cp.gap_hist);
    else if (which == "sep")
        csv = to_csv(cp.sep_hist);
    else
        throw Exit{kUsage, "unknown histogram '" + which + "' (expected gap or sep)"};
    if (output.empty() || output == "-") {
        out << csv;
    } else {
        try {
            write_file_atomic(output, csv);
        } catch (const fs::filesystem_error& e) {
            throw Exit{kUsage, e.what()};
        }
    }
    return kOk;
}

// ------------------------------------------------------------------ constants

int cmd_constants(u64 cutoff, const std::string& format, std::ostream& out) {
    auto c2 = twin_prime_constant(cutoff);
    Table t({"name", "value", "truncation_bound", "cutoff"});
    t.add({"c2_computed", fixed(c2.value, 10), [&] {
               char buf[32];
               std::snprintf(buf, sizeof buf, "%.3e", c2.bound);
               return std::string(buf);
           }(),
           std::to_string(cutoff)});
    t.add({"c2_literature", fixed(kTwinPrimeConstantLiterature, 5), "", ""});
    t.print(out, parse_format(format));
    return kOk;
}

}  // namespace

u64 parse_count(std::string_view text) {
    auto caret = text.find('^');
    if (caret == std::string_view::npos) return parse_digits(text, text);
    u64 base = parse_digits(text.substr(0, caret), text);
    u64 exp = parse_digits(text.substr(caret + 1), text);
    u64 v = 1;
    for (u64 i = 0; i < exp; ++i)
        if (!checked_mul(v, base, v)) throw NumberError{"number too large: '" + std::string(text) + "'", true};
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"twinstats: gap statistics between consecutive twin primes"};
    app.require_subcommand(1);

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Sieve through --n-max and write checkpoints");
    scan_cmd->add_option("--n-max", scan.n_max, "Upper bound N (accepts 2^k, 10^k)")->required();
    scan_cmd->add_option("--checkpoint-start", scan.checkpoint_start, "First scheduled checkpoint (default 2^22)");
    scan_cmd->add_option("--checkpoint-ratio", scan.checkpoint_ratio, "Geometric ratio of the schedule");
    scan_cmd->add_option("--checkpoint-at", scan.checkpoint_at, "Extra checkpoint values");
    scan_cmd->add_option("--segment-bits", scan.segment_bits, "log2 of the segment length");
    scan_cmd->add_option("--threads", scan.threads, "Sieve worker threads (default: hardware concurrency)");
    scan_cmd->add_option("--out", scan.out, "Output directory");
    scan_cmd->add_option("--resume", scan.resume, "Resume from this state file");
    scan_cmd->add_option("--c2", scan.c2)->check(CLI::IsMember({"computed", "literature"}));
    scan_cmd->add_option("--format", scan.format)->check(CLI::IsMember({"text", "csv"}));

    FitArgs fit;
    auto add_fit_flags = [&fit](CLI::App* sub) {
        sub->add_option("--c2", fit.c2, "Twin-prime constant source")->check(CLI::IsMember({"computed", "literature"}));
        sub->add_option("--format", fit.format)->check(CLI::IsMember({"text", "csv"}));
    };
    auto* table_cmd = app.add_subcommand("table", "Measured vs predicted A(N), B(N) per checkpoint");
    add_checkpoint_inputs(table_cmd, fit.files, fit.dir);
    add_fit_flags(table_cmd);
    table_cmd->add_option("--skip-head", fit.skip_head, "Drop bins with s below this");
    table_cmd->add_option("--keep-fraction", fit.keep_fraction, "Fraction of bins kept before the tail cut")
        ->check(CLI::Range(0.0, 1.0));
    table_cmd->add_option("--keep-basis", fit.keep_basis, "Keep fraction of all bins or of bins after the skip")
        ->check(CLI::IsMember({"all", "remaining"}));
    table_cmd->add_flag("--weighted", fit.weighted, "Weight bins by their counts");
    table_cmd->add_flag("--sensitivity", fit.sensitivity, "Also print the trimming sensitivity grid");
    table_cmd->add_option("--fit-dir", fit.fit_dir, "Write fit_<N>.json reports here");

    auto* smax_cmd = app.add_subcommand("smax", "Largest separation vs its predictions");
    add_checkpoint_inputs(smax_cmd, fit.files, fit.dir);
    add_fit_flags(smax_cmd);

    auto* champ_cmd = app.add_subcommand("champions", "Most frequent arithmetic gap per checkpoint");
    add_checkpoint_inputs(champ_cmd, fit.files, fit.dir);
    champ_cmd->add_option("--format", fit.format)->check(CLI::IsMember({"text", "csv"}));
    champ_cmd->add_option("--top", fit.top, "Number of top bins listed");

    std::string export_file, export_which, export_output;
    auto* export_cmd = app.add_subcommand("export", "Write one histogram of a checkpoint as CSV");
    export_cmd->add_option("file", export_file, "Checkpoint JSON file")->required();
    export_cmd->add_option("--which", export_which, "gap or sep")->required();
    export_cmd->add_option("--output,-o", export_output, "Output path (default stdout)");

    u64 cutoff = kDefaultTwinConstantCutoff;
    std::string const_format = "text";
    auto* const_cmd = app.add_subcommand("constants", "Print the twin-prime constant with its truncation bound");
    const_cmd->add_option("--cutoff", cutoff, "Largest prime in the partial product")->check(CLI::Range(3ull, 1ull << 32));
    const_cmd->add_option("--format", const_format)->check(CLI::IsMember({"text", "csv"}));

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*scan_cmd) return cmd_scan(scan, out, err);
        if (*table_cmd) return cmd_table(fit, out, err);
        if (*smax_cmd) return cmd_smax(fit, out);
        if (*champ_cmd) return cmd_champions(fit, out);
        if (*export_cmd) return cmd_export(export_file, export_which, export_output, out);
        if (*const_cmd) return cmd_constants(cutoff, const_format, out);
    } catch (const Exit& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}

}  // namespace twinstats::cli
