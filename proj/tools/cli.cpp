#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drmsim/analysis.hpp"
#include "drmsim/group_codes.hpp"
#include "drmsim/ris_channel.hpp"

#ifndef DRMSIM_VERSION
#define DRMSIM_VERSION "dev"
#endif

namespace drmsim::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Flags shared by every subcommand that builds a link.
struct LinkFlags {
    std::string scheme = "drm";
    int K = 2;
    int M = 2;
    std::string code;
    std::string u;
    std::string init;
    int N = 4;
    int Nr = 3;
    int T = 100;
    std::string patterns = "optimized";
    std::string codebook;
    std::string grid = "0:2:10";
    std::string axis = "snr";
    std::uint64_t seed = 1;
    std::string config;
};

void add_link_flags(CLI::App* app, LinkFlags& f) {
    app->add_option("--scheme", f.scheme, "drm | drm-dstm | ndrm")->capture_default_str();
    app->add_option("--K", f.K, "reflecting patterns (slots) per block")->capture_default_str();
    app->add_option("--M", f.M, "PSK order, or group code size for drm-dstm")->capture_default_str();
    app->add_option("--code,--kind", f.code, "group code kind for drm-dstm: cyclic | dicyclic");
    app->add_option("--u", f.u, "group code exponents, e.g. 1,3 (default: shipped table row)");
    app->add_option("--init", f.init, "initializer for drm-dstm: hadamard | identity");
    app->add_option("--N", f.N, "reflecting units")->capture_default_str();
    app->add_option("--Nr", f.Nr, "receive antennas")->capture_default_str();
    app->add_option("--T", f.T, "blocks per frame, including the reference block")->capture_default_str();
    app->add_option("--patterns", f.patterns, "optimized | random | file:<path>")->capture_default_str();
    app->add_option("--codebook", f.codebook, "permutation codebook file");
    app->add_option("--ebn0,--snr", f.grid, "SNR grid in dB: start:step:stop, a,b,c or a single value")
        ->capture_default_str();
    app->add_option("--axis", f.axis, "meaning of the grid: snr (rho = 1/sigma^2) | ebn0 (rho K / r)")
        ->capture_default_str();
    app->add_option("--seed", f.seed, "master seed")->capture_default_str();
    app->add_option("--config", f.config, "flat key=value file; flags on the command line take precedence");
}

SimConfig to_config(const LinkFlags& f) {
    SimConfig cfg;
    cfg.scheme = as_usage([&] { return parse_scheme(f.scheme); });
    cfg.K = f.K;
    cfg.M = f.M;
    cfg.N = f.N;
    cfg.Nr = f.Nr;
    cfg.T = f.T;
    cfg.seed = f.seed;
    const bool code_given = !f.code.empty() || !f.u.empty() || !f.init.empty();
    if (cfg.scheme != Scheme::drm_dstm && code_given) {
        throw UsageError("--code/--u/--init only apply to --scheme drm-dstm");
    }
    if (cfg.scheme == Scheme::drm_dstm) {
        cfg.code_kind = as_usage([&] { return parse_code_kind(f.code.empty() ? "cyclic" : f.code); });
        if (!f.u.empty()) cfg.u = parse_int_list(f.u);
        if (!f.init.empty()) cfg.init = as_usage([&] { return parse_init_style(f.init); });
    }
    if (f.patterns == "optimized") {
        cfg.patterns = PatternSource::optimized;
    } else if (f.patterns == "random") {
        cfg.patterns = PatternSource::random;
    } else if (f.patterns.rfind("file:", 0) == 0 && f.patterns.size() > 5) {
        cfg.patterns = PatternSource::file;
        cfg.pattern_file = f.patterns.substr(5);
    } else {
        throw UsageError("--patterns must be optimized, random or file:<path>");
    }
    cfg.codebook_file = f.codebook;
    cfg.snr_db = parse_grid(f.grid);
    cfg.axis = as_usage([&] { return parse_snr_axis(f.axis); });
    as_usage([&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

unsigned env_workers() {
    if (const char* v = std::getenv("RIS_SIM_THREADS"); v && *v) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (*end == '\0' && n > 0) return static_cast<unsigned>(n);
        throw UsageError(std::string("RIS_SIM_THREADS must be a positive integer, got '") + v + "'");
    }
    return 0;
}

// Appends "--key=value" for every config-file entry not already given on the
// command line, so flags win over the file.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    try {
        kv = read_key_values(in);
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
    const std::vector<std::string> given = args;
    for (const auto& [key, value] : kv) {
        const std::string flag = "--" + key;
        const bool on_cli = std::any_of(given.begin(), given.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!on_cli) args.push_back(flag + "=" + value);
    }
    return args;
}

void print_group_row(std::ostream& out, const GroupCodeSpec& spec) {
    const GroupCode code = build_group_code(spec);
    const GroupReport r = verify_group(code);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-2d %-9s %-16s %5zu %5d %5d  %-7s %-6s %-5s %s\n", spec.K,
                  to_string(spec.kind).c_str(), spec.label().c_str(), code.size(), r.max_order, r.expected_order,
                  r.unitary ? "yes" : "NO", r.closed ? "yes" : "NO", r.order_ok ? "yes" : "NO",
                  r.ok() ? "ok" : "FAIL");
    out << buf;
}

void print_group_header(std::ostream& out) {
    out << "K  kind      code               |G|     o  want  unitary closed order verdict\n";
}

int cmd_simulate(const LinkFlags& f, std::uint64_t min_errors, std::uint64_t max_bits, std::uint64_t max_frames,
                 unsigned workers, const std::string& out_path, bool quiet, std::ostream& out, std::ostream& err) {
    SimConfig cfg = to_config(f);
    cfg.min_bit_errors = min_errors;
    cfg.max_info_bits = max_bits;
    cfg.max_frames = max_frames;
    cfg.workers = workers > 0 ? workers : env_workers();
    as_usage([&] {
        cfg.validate();
        return 0;
    });

    auto progress = [&](const SnrRecord& r) {
        if (quiet) return;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s=%g dB  ber=%.4g  errors=%llu  frames=%llu  (%.2fs)\n",
                      to_string(cfg.axis).c_str(), r.snr_db, r.ber, static_cast<unsigned long long>(r.bit_errors),
                      static_cast<unsigned long long>(r.frames), r.elapsed_s);
        err << buf;
    };
    const SimResult result = run_sweep(cfg, progress);

    if (out_path.empty()) {
        write_csv(out, cfg, result);
        return 0;
    }
    std::ofstream csv(out_path);
    if (!csv) throw std::runtime_error("cannot write " + out_path);
    write_csv(csv, cfg, result);
    std::ofstream manifest(out_path + ".manifest");
    if (!manifest) throw std::runtime_error("cannot write " + out_path + ".manifest");
    manifest << run_manifest(cfg, utc_timestamp());
    if (!quiet) err << "wrote " << out_path << " and " << out_path << ".manifest\n";
    return 0;
}

int cmd_select_patterns(int N, int M, int K, const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (N < 1 || N > kMaxDepletionUnits) {
        throw UsageError("--N must be in [1, " + std::to_string(kMaxDepletionUnits) + "]");
    }
    if (K < 1 || static_cast<std::size_t>(K) > (std::size_t{1} << N)) {
        throw UsageError("--K=" + std::to_string(K) + " exceeds the 2^N=" + std::to_string(1 << N) + " sign patterns");
    }
    const DepletionResult res = as_usage([&] { return select_patterns_stepwise_depletion(N, M, K); });
    std::string indices;
    for (auto i : res.selected_index) indices += (indices.empty() ? "" : " ") + std::to_string(i);
    const std::vector<std::string> header{
        "stepwise depletion N=" + std::to_string(N) + " M=" + std::to_string(M) + " K=" + std::to_string(K),
        "D_ED,min=" + fmt("%.10g", res.min_distance),
        "all-candidate D_ED,min=" + fmt("%.10g", res.initial_min_distance),
        "canonical indices: " + indices,
    };
    if (res.min_distance == 0.0) {
        err << "warning: D_ED,min = 0; no " << K << " patterns of " << N
            << " units keep every (pattern, symbol) tuple distinct\n";
    }
    if (out_path.empty()) {
        write_patterns(out, res.set.selected, header);
        return 0;
    }
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    write_patterns(file, res.set.selected, header);
    return 0;
}

int cmd_codes_list(int K, const std::string& kind, std::ostream& out) {
    std::vector<GroupCodeSpec> rows = K > 0 ? builtin_code_tables(K) : builtin_code_tables();
    if (!kind.empty()) {
        const CodeKind k = as_usage([&] { return parse_code_kind(kind); });
        std::erase_if(rows, [k](const GroupCodeSpec& s) { return s.kind != k; });
    }
    if (rows.empty()) throw UsageError("no shipped codes match");
    print_group_header(out);
    for (const auto& spec : rows) print_group_row(out, spec);
    return 0;
}

int cmd_codes_verify(int K, int M, const std::string& kind, const std::string& u, std::ostream& out) {
    GroupCodeSpec spec;
    spec.kind = as_usage([&] { return parse_code_kind(kind); });
    spec.K = K;
    spec.M = M;
    spec.u = parse_int_list(u);
    as_usage([&] {
        spec.validate();
        return 0;
    });
    const GroupCode code = build_group_code(spec);
    const GroupReport r = verify_group(code);
    out << "code=" << to_string(spec.kind) << " " << spec.label() << "\n";
    out << "K=" << K << "\n";
    out << "size=" << code.size() << "\n";
    out << "unitary=" << (r.unitary ? "true" : "false") << "\n";
    out << "closed=" << (r.closed ? "true" : "false") << "\n";
    out << "distinct=" << (r.distinct ? "true" : "false") << "\n";
    out << "identity_first=" << (r.identity_first ? "true" : "false") << "\n";
    out << "size_ok=" << (r.size_ok ? "true" : "false") << "\n";
    out << "max_order=" << r.max_order << "\n";
    out << "expected_order=" << r.expected_order << "\n";
    out << "verdict=" << (r.ok() ? "pass" : "fail") << "\n";
    return r.ok() ? 0 : 1;
}

int cmd_codes_search(int K, int M, const std::string& kind, std::ostream& out) {
    const CodeKind k = as_usage([&] { return parse_code_kind(kind); });
    const USearchResult res = as_usage([&] { return search_best_u(k, M, K); });
    out << "code=" << to_string(k) << " " << res.spec.label() << "\n";
    out << "min_distance_sq=" << fmt("%.10g", res.min_distance_sq) << "\n";
    out << "candidates=" << res.candidates << "\n";
    return 0;
}

int cmd_complexity(const std::string& scheme_text, int K, int M, int Nr, const std::string& kind, bool csv,
                   std::ostream& out) {
    const Scheme scheme = as_usage([&] { return parse_scheme(scheme_text); });
    if (scheme != Scheme::drm_dstm && !kind.empty()) throw UsageError("--kind only applies to --scheme drm-dstm");
    const ComplexityReport r = as_usage([&] {
        return scheme == Scheme::drm_dstm ? complexity_coded(K, M, Nr, parse_code_kind(kind.empty() ? "cyclic" : kind))
                                          : complexity_uncoded(K, M, Nr);
    });
    const std::string kind_text = r.kind ? to_string(*r.kind) : "none";
    const std::string alt = r.group_size_multiplications ? std::to_string(*r.group_size_multiplications) : "";
    if (csv) {
        out << "scheme,K,M,Nr,kind,multiplications,group_size_multiplications\n";
        out << to_string(scheme) << ',' << K << ',' << M << ',' << Nr << ',' << kind_text << ','
            << r.multiplications << ',' << alt << '\n';
        return 0;
    }
    out << "scheme=" << to_string(scheme) << "\n";
    out << "K=" << K << "\nM=" << M << "\nNr=" << Nr << "\n";
    out << "kind=" << kind_text << "\n";
    out << "formula=" << r.formula_name << "\n";
    out << "multiplications=" << r.multiplications << "\n";
    if (r.group_size_multiplications) {
        out << "group_size_multiplications=" << alt << "  # with |G| = M code matrices\n";
    }
    return 0;
}

int cmd_bound(const LinkFlags& f, std::size_t channels, std::uint32_t reps, std::ostream& out) {
    const SimConfig cfg = to_config(f);
    if (channels == 0) throw UsageError("--bound-avg must be >= 1");
    const Link link = build_link(cfg);
    if (link.candidates.size() > kMaxBoundCandidates) {
        throw UsageError("bound: " + std::to_string(link.candidates.size()) + " candidates exceed the " +
                         std::to_string(kMaxBoundCandidates) + " guard");
    }
    out << "# bound: Hamming-weighted pairwise error sum, averaged over " << channels << " channels\n";
    out << "ebn0_db,rho,channels,bound,bound_per_bit,sim_ber,sim_bit_errors,sim_info_bits\n";
    for (double snr : cfg.snr_db) {
        const BoundPoint bp = evaluate_bound(link, snr, channels, reps);
        out << fmt("%.10g", snr) << ',' << fmt("%.10g", 1.0 / bp.sigma2) << ',' << bp.channels << ','
            << format_ber(bp.bound) << ',' << format_ber(bp.bound_per_bit) << ',' << format_ber(bp.sim_ber) << ','
            << bp.sim_bit_errors << ',' << bp.sim_info_bits << '\n';
    }
    return 0;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw UsageError("empty SNR grid");
    std::vector<double> out;
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw UsageError("SNR grid '" + t + "' must be start:step:stop");
        const double start = parse_double(parts[0]);
        const double step = parse_double(parts[1]);
        const double stop = parse_double(parts[2]);
        if (!(step > 0.0)) throw UsageError("SNR grid step must be > 0");
        if (stop < start) throw UsageError("SNR grid stop must be >= start");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (n > 100000) throw UsageError("SNR grid has too many points");
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
        }
        return out;
    }
    for (const auto& p : split(t, ',')) out.push_back(parse_double(p));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& p : split(trim(text), ',')) {
        char* end = nullptr;
        const long v = std::strtol(p.c_str(), &end, 10);
        if (p.empty() || *end != '\0') throw UsageError("not an integer list: '" + text + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::string csv_header() { return "scheme,K,M,code,u,ebn0_db,rho,info_bits,bit_errors,ber,frames,seed"; }

std::string format_ber(double ber) { return fmt("%.6g", ber); }

void write_csv(std::ostream& out, const SimConfig& cfg, const SimResult& result) {
    std::string code = "none", u;
    if (cfg.scheme == Scheme::drm_dstm) {
        const GroupCodeSpec spec = cfg.code_spec();
        code = to_string(spec.kind);
        u = "\"" + spec.u_list() + "\"";
    }
    out << csv_header() << '\n';
    for (const auto& r : result.records) {
        out << to_string(cfg.scheme) << ',' << cfg.K << ',' << cfg.M << ',' << code << ',' << u << ','
            << fmt("%.10g", r.snr_db) << ',' << fmt("%.10g", r.rho) << ',' << r.info_bits << ',' << r.bit_errors
            << ',' << format_ber(r.ber) << ',' << r.frames << ',' << result.seed << '\n';
    }
}

std::string run_manifest(const SimConfig& cfg, const std::string& timestamp) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    std::ostringstream os;
    os << cfg.manifest();
    os << "tool_version=" << DRMSIM_VERSION << '\n';
    os << "config_hash=" << hash << '\n';
    os << "timestamp=" << timestamp << '\n';
    return os.str();
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"RIS differential reflecting modulation link simulator", "ris-sim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", DRMSIM_VERSION);

    LinkFlags sim_flags;
    std::uint64_t min_errors = 200, max_bits = 10'000'000, max_frames = 0;
    unsigned workers = 0;
    std::string out_path;
    bool quiet = false;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo BER sweep, written as CSV plus a manifest");
    add_link_flags(sim, sim_flags);
    sim->add_option("--min-errors", min_errors, "stop a point after this many bit errors")->capture_default_str();
    sim->add_option("--max-bits", max_bits, "stop a point after this many information bits")->capture_default_str();
    sim->add_option("--max-frames", max_frames, "frame cap per point (0: none)")->capture_default_str();
    sim->add_option("--workers", workers, "worker threads (default: RIS_SIM_THREADS or all cores)");
    sim->add_option("--out", out_path, "CSV path (default: stdout); the manifest goes to <out>.manifest");
    sim->add_flag("--quiet", quiet, "no per-point progress on stderr");

    int sp_N = 4, sp_M = 2, sp_K = 2;
    std::string sp_out, sp_config;
    auto* sel = app.add_subcommand("select-patterns", "Stepwise depletion over the 2^N sign patterns");
    sel->add_option("--N", sp_N, "reflecting units")->capture_default_str();
    sel->add_option("--M", sp_M, "PSK order the tuples are built from")->capture_default_str();
    sel->add_option("--K", sp_K, "patterns to keep")->capture_default_str();
    sel->add_option("--out", sp_out, "pattern file (default: stdout)");
    sel->add_option("--config", sp_config, "flat key=value file");

    auto* codes = app.add_subcommand("codes", "Shipped unitary group codes");
    codes->require_subcommand(1);
    int cl_K = 0;
    std::string cl_kind;
    auto* clist = codes->add_subcommand("list", "Print the shipped K = 2, 3, 4 tables with verification verdicts");
    clist->add_option("--K", cl_K, "only this K");
    clist->add_option("--kind,--code", cl_kind, "only cyclic or dicyclic");
    int cv_K = 2, cv_M = 2;
    std::string cv_kind = "cyclic", cv_u;
    auto* cverify = codes->add_subcommand("verify", "Build one code and check unitarity, closure and order");
    cverify->add_option("--K", cv_K)->capture_default_str();
    cverify->add_option("--M", cv_M)->capture_default_str();
    cverify->add_option("--kind,--code", cv_kind)->capture_default_str();
    cverify->add_option("--u", cv_u, "exponents, e.g. 1,3")->required();
    int cs_K = 2, cs_M = 8;
    std::string cs_kind = "cyclic";
    auto* csearch = codes->add_subcommand("search", "Exhaustive search for the u maximising the minimum distance");
    csearch->add_option("--K", cs_K)->capture_default_str();
    csearch->add_option("--M", cs_M)->capture_default_str();
    csearch->add_option("--kind,--code", cs_kind)->capture_default_str();

    std::string cx_scheme = "drm", cx_kind;
    int cx_K = 2, cx_M = 2, cx_Nr = 3;
    bool cx_csv = false;
    auto* cx = app.add_subcommand("complexity", "Detection multiplications per block");
    cx->add_option("--scheme", cx_scheme)->capture_default_str();
    cx->add_option("--K", cx_K)->capture_default_str();
    cx->add_option("--M", cx_M)->capture_default_str();
    cx->add_option("--Nr", cx_Nr)->capture_default_str();
    cx->add_option("--kind,--code", cx_kind, "cyclic | dicyclic (drm-dstm only)");
    cx->add_flag("--csv", cx_csv);

    LinkFlags bound_flags;
    bound_flags.grid = "6";
    std::size_t bound_avg = 100;
    std::uint32_t noise_reps = 4;
    auto* bound = app.add_subcommand("bound", "Union bound next to the BER simulated on the same channels");
    add_link_flags(bound, bound_flags);
    bound->add_option("--bound-avg", bound_avg, "channel realizations to average over")->capture_default_str();
    bound->add_option("--noise-reps", noise_reps, "noise draws per channel for the simulated BER")
        ->capture_default_str();

    try {
        std::vector<std::string> args = inject_config(raw_args);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? 0 : 2;
        }

        if (sim->parsed()) {
            return cmd_simulate(sim_flags, min_errors, max_bits, max_frames, workers, out_path, quiet, out, err);
        }
        if (sel->parsed()) return cmd_select_patterns(sp_N, sp_M, sp_K, sp_out, out, err);
        if (clist->parsed()) return cmd_codes_list(cl_K, cl_kind, out);
        if (cverify->parsed()) return cmd_codes_verify(cv_K, cv_M, cv_kind, cv_u, out);
        if (csearch->parsed()) return cmd_codes_search(cs_K, cs_M, cs_kind, out);
        if (cx->parsed()) return cmd_complexity(cx_scheme, cx_K, cx_M, cx_Nr, cx_kind, cx_csv, out);
        if (bound->parsed()) return cmd_bound(bound_flags, bound_avg, noise_reps, out);
        err << app.help();
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace drmsim::cli
