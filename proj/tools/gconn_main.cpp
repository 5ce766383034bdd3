// gconn: exact deciders and the contraction calculus for Z_k group
// connectivity on small multigraphs, with a census-driven catalog of the
// exceptional graphs.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "gconn/catalog.hpp"
#include "gconn/census.hpp"
#include "gconn/classifier.hpp"
#include "gconn/connectivity.hpp"
#include "gconn/error.hpp"
#include "gconn/flows.hpp"
#include "gconn/io.hpp"
#include "gconn/multigraph.hpp"
#include "gconn/reduction.hpp"

#ifndef GCONN_DATA_DIR
#define GCONN_DATA_DIR "data"
#endif

namespace {

using namespace gconn;

struct CommonOpts {
    std::string input = "-";
    std::string out;
    std::string format = "tsv";
    std::string catalog_path = std::string(GCONN_DATA_DIR) + "/catalog.tsv";
    std::string families_path = std::string(GCONN_DATA_DIR) + "/families.tsv";
    int group = 3;
    int max_edges = 24; // conservative CLI default; the library allows 28
    int workers = 0;
};

OracleLimits limits_of(const CommonOpts& c) {
    OracleLimits l;
    l.max_flow_edges = c.max_edges;
    l.max_orientation_edges = std::max(c.max_edges, 30);
    l.threads = c.workers;
    return l;
}

std::string read_all(std::istream& is) {
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// Input is a file of graph6 lines, "-" for stdin, or one inline graph6 string.
std::string slurp_input(const std::string& input) {
    if (input == "-") return read_all(std::cin);
    std::ifstream f(input);
    if (f) return read_all(f);
    return input + "\n";
}

std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<MultiGraph> parse_graphs(const std::string& input) {
    std::vector<MultiGraph> out;
    for (const std::string& line : nonempty_lines(slurp_input(input))) out.push_back(decode_graph6(line));
    if (out.empty()) throw InputError("no input graphs");
    return out;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << text;
}

Catalog load_verified_catalog(const CommonOpts& c) {
    Catalog cat = Catalog::load(c.catalog_path);
    CatalogReport rep = verify_catalog(cat, limits_of(c));
    if (!rep.all_pass()) {
        for (const auto& chk : rep.checks)
            if (!chk.pass) std::cerr << "catalog check failed: " << chk.name << ' ' << chk.detail << '\n';
        throw Error("catalog verification failed; refusing to classify");
    }
    return cat;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool with_input = true) {
    if (with_input) cmd->add_option("input", c.input, "graph6 file, '-' for stdin, or an inline graph6 string");
    cmd->add_option("--out", c.out, "output path (default: stdout)");
    cmd->add_option("--format", c.format, "tsv | jsonl | dot")->check(CLI::IsMember({"tsv", "jsonl", "dot"}));
    cmd->add_option("--group", c.group, "group modulus k (default 3)")->check(CLI::Range(3, 16));
    cmd->add_option("--max-edges", c.max_edges, "oracle enumeration budget as log2 of steps (default 24)");
    cmd->add_option("--workers", c.workers, "worker threads (default: runtime)");
    cmd->add_option("--catalog", c.catalog_path, "catalog file");
    cmd->add_option("--families", c.families_path, "family data file");
}

int run_decide(const CommonOpts& c, bool flow_mode, bool predict) {
    auto graphs = parse_graphs(c.input);
    OracleLimits lim = limits_of(c);
    std::vector<std::string> lines(graphs.size());
    std::vector<int> verdicts(graphs.size(), 0);
    Catalog cat;
    std::vector<FamilyEntry> fams;
    if (predict) {
        cat = load_verified_catalog(c);
        std::ifstream f(c.families_path);
        if (f) fams = load_families(c.families_path);
    }
    std::string error;
#ifdef _OPENMP
    int nt = c.workers > 0 ? c.workers : omp_get_max_threads();
#else
    int nt = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (size_t i = 0; i < graphs.size(); ++i) {
        try {
            bool yes;
            std::string tag;
            if (flow_mode) {
                yes = predict ? predict_nz3(graphs[i], cat, fams, lim) : has_nowhere_zero_flow(graphs[i], c.group, lim);
                tag = yes ? "nz" + std::to_string(c.group) + "-flow" : "no-nz" + std::to_string(c.group) + "-flow";
            } else {
                yes = is_group_connected(graphs[i], c.group, lim);
                tag = yes ? "z" + std::to_string(c.group) + "-connected" : "not-z" + std::to_string(c.group) + "-connected";
            }
            verdicts[i] = yes ? 1 : 0;
            lines[i] = encode_graph6(graphs[i]) + "\t" + tag;
        } catch (const Error& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw Error(error);
    std::ostringstream os;
    for (const auto& l : lines) os << l << '\n';
    emit(c, os.str());
    bool all = std::all_of(verdicts.begin(), verdicts.end(), [](int v) { return v == 1; });
    return all ? 0 : 1;
}

int run_classify(const CommonOpts& c) {
    auto graphs = parse_graphs(c.input);
    Catalog cat = load_verified_catalog(c);
    OracleLimits lim = limits_of(c);
    std::vector<std::string> lines(graphs.size());
    std::string error;
#ifdef _OPENMP
    int nt = c.workers > 0 ? c.workers : omp_get_max_threads();
#else
    int nt = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (size_t i = 0; i < graphs.size(); ++i) {
        try {
            Verdict v = classify(graphs[i], cat, lim);
            lines[i] = c.format == "jsonl" ? verdict_jsonl(graphs[i], v) : verdict_tsv(graphs[i], v);
        } catch (const Error& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw Error(error);
    std::ostringstream os;
    for (const auto& l : lines) os << l << '\n';
    emit(c, os.str());
    return 0;
}

int run_reduce(const CommonOpts& c, const std::string& verify_path) {
    OracleLimits lim = limits_of(c);
    if (!verify_path.empty()) {
        std::ifstream f(verify_path);
        if (!f) throw InputError("cannot read trace " + verify_path);
        ReductionTrace t = trace_from_text(read_all(f));
        std::string why;
        bool ok = verify_trace(t, lim, &why);
        emit(c, ok ? "trace-ok\n" : "trace-invalid\t" + why + "\n");
        return ok ? 0 : 1;
    }
    auto graphs = parse_graphs(c.input);
    std::ostringstream os;
    for (const auto& g : graphs) os << trace_to_text(reduce_greedy(g));
    emit(c, os.str());
    return 0;
}

int run_census(const CommonOpts& c, int min_n, int max_n, int min_conn, bool alpha, bool report) {
    if (min_n < 1 || max_n > kMaxCensusOrder || min_n > max_n) throw BudgetError("census: bad order range");
    OracleLimits lim = limits_of(c);
    CensusOptions copt;
    copt.alpha_le_2 = alpha;
    copt.min_edge_connectivity = min_conn;
    copt.threads = c.workers;
    std::ostringstream os;
    if (!report) {
        for (int n = min_n; n <= max_n; ++n)
            for (const MultiGraph& g : enumerate_census(n, copt)) os << census_line(g) << '\n';
        emit(c, os.str());
        return 0;
    }
    Catalog cat = load_verified_catalog(c);
    size_t classes = 0, exceptional = 0, agreements = 0;
    for (int n = min_n; n <= max_n; ++n) {
        auto graphs = enumerate_census(n, copt);
        std::vector<std::string> rows(graphs.size());
        std::vector<int> agree(graphs.size(), 0), exc(graphs.size(), 0);
        std::string error;
#ifdef _OPENMP
        int nt = c.workers > 0 ? c.workers : omp_get_max_threads();
#else
        int nt = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (size_t i = 0; i < graphs.size(); ++i) {
            try {
                bool oracle = is_group_connected(graphs[i], 3, lim);
                Verdict v = classify(graphs[i], cat, lim);
                bool ok = (v.outcome == Outcome::Z3Connected) == oracle;
                if (v.outcome == Outcome::Exceptional) ok = ok && !oracle;
                agree[i] = ok ? 1 : 0;
                exc[i] = v.outcome == Outcome::Exceptional ? 1 : 0;
                std::ostringstream row;
                row << encode_graph6(graphs[i]) << '\t' << graphs[i].order() << '\t' << graphs[i].size() << '\t'
                    << (oracle ? "z3-connected" : "not-z3-connected") << '\t' << outcome_name(v.outcome) << '\t'
                    << (ok ? "agree" : "DISAGREE");
                rows[i] = row.str();
            } catch (const Error& e) {
#pragma omp critical
                error = e.what();
            }
        }
        if (!error.empty()) throw Error(error);
        for (size_t i = 0; i < rows.size(); ++i) {
            os << rows[i] << '\n';
            ++classes;
            exceptional += static_cast<size_t>(exc[i]);
            agreements += static_cast<size_t>(agree[i]);
        }
    }
    os << "# classes=" << classes << "\texceptional=" << exceptional << "\tagreements=" << agreements << '\n';
    emit(c, os.str());
    return agreements == classes ? 0 : 1;
}

int run_catalog_verify(const CommonOpts& c, bool full) {
    Catalog cat = Catalog::load(c.catalog_path);
    OracleLimits lim = limits_of(c);
    CatalogReport rep = verify_catalog(cat, lim);
    std::ostringstream os;
    os << rep.to_tsv();
    bool pass = rep.all_pass();
    if (full) {
        auto derived = derive_exception_set(4, 8, lim);
        std::set<CanonicalForm> want, got;
        for (const auto& g : derived) want.insert(canonical_form(g));
        for (const auto& e : cat.entries()) got.insert(canonical_form(e.graph()));
        bool equal = derived.size() == 18 && want == got;
        os << "derivation-equality\t" << (equal ? "pass" : "FAIL") << "\tclasses=" << derived.size() << '\n';
        pass = pass && equal;
    }
    emit(c, os.str());
    return pass ? 0 : 1;
}

int run_catalog_derive(const CommonOpts& c, const std::string& out_path, bool with_families) {
    OracleLimits lim = limits_of(c);
    Catalog cat = derive_catalog(lim);
    std::string path = out_path.empty() ? c.catalog_path : out_path;
    cat.save(path);
    std::ostringstream os;
    os << "catalog written to " << path << '\n';
    for (const auto& e : cat.entries())
        os << e.name << '\t' << e.g6 << '\t' << (e.alignment_full ? "full" : "partial") << '\n';
    if (with_families) {
        std::string report;
        auto fams = derive_family_data(cat, &report, lim);
        save_families(fams, c.families_path);
        os << "families written to " << c.families_path << '\n' << report;
    }
    emit(c, os.str());
    return 0;
}

int run_convert(const CommonOpts& c) {
    std::string text = slurp_input(c.input);
    std::ostringstream os;
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 5, "graph") == 0) {
        // DOT in, graph6 out. Multiple "graph ... { ... }" blocks allowed.
        std::istringstream is(text);
        std::string block, line;
        while (std::getline(is, line)) {
            block += line + "\n";
            if (line.find('}') != std::string::npos) {
                os << encode_graph6(from_dot(block)) << '\n';
                block.clear();
            }
        }
        if (block.find_first_not_of(" \t\r\n") != std::string::npos) throw InputError("dot: unterminated graph block");
    } else {
        int idx = 0;
        for (const std::string& line : nonempty_lines(text)) os << to_dot(decode_graph6(line), "g" + std::to_string(idx++));
    }
    emit(c, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z_k group connectivity deciders, reduction calculus and exceptional-graph census"};
    app.require_subcommand(1);

    CommonOpts c;
    bool predict = false;
    std::string verify_path, derive_out;
    bool full = false, with_families = false, report = false, no_alpha = false;
    int min_n = 4, max_n = 8, min_conn = 3;

    auto* decide = app.add_subcommand("decide", "decide Z_k group connectivity");
    add_common(decide, c);
    auto* nzflow = app.add_subcommand("nzflow", "decide nowhere-zero Z_k flow existence");
    add_common(nzflow, c);
    nzflow->add_flag("--predict", predict, "use the structural prediction instead of the oracle (k=3)");
    auto* classify_cmd = app.add_subcommand("classify", "trichotomy classification with certificates");
    add_common(classify_cmd, c);
    auto* reduce = app.add_subcommand("reduce", "greedy pattern reduction; emits a replayable trace");
    add_common(reduce, c);
    reduce->add_option("--verify", verify_path, "verify a trace file instead of reducing");
    auto* census = app.add_subcommand("census", "stream census classes, or a classifier-vs-oracle report");
    add_common(census, c, false);
    // order-8 report rows need the full 2^28 oracle budget
    census->parse_complete_callback([&c, census] {
        if (census->count("--max-edges") == 0) c.max_edges = OracleLimits{}.max_flow_edges;
    });
    census->add_option("--min-n", min_n, "smallest order (default 4)");
    census->add_option("--max-n", max_n, "largest order (default 8)");
    census->add_option("--min-conn", min_conn, "minimum edge connectivity (default 3)");
    census->add_flag("--no-alpha", no_alpha, "drop the alpha <= 2 constraint");
    census->add_flag("--report", report, "classifier-vs-oracle agreement report");
    auto* catalog_cmd = app.add_subcommand("catalog", "catalog maintenance");
    auto* cat_verify = catalog_cmd->add_subcommand("verify", "check every catalog entry and profile fact");
    add_common(cat_verify, c, false);
    cat_verify->add_flag("--full", full, "also re-derive the exception set and compare");
    auto* cat_derive = catalog_cmd->add_subcommand("derive", "derive catalog (and optionally family data) from scratch");
    add_common(cat_derive, c, false);
    cat_derive->add_option("--derive-out", derive_out, "where to write the derived catalog");
    cat_derive->add_flag("--with-families", with_families, "also derive multigraph family data");
    auto* convert = app.add_subcommand("convert", "graph6 to DOT, or DOT back to graph6");
    add_common(convert, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (decide->parsed()) return run_decide(c, false, false);
        if (nzflow->parsed()) return run_decide(c, true, predict);
        if (classify_cmd->parsed()) return run_classify(c);
        if (reduce->parsed()) return run_reduce(c, verify_path);
        if (census->parsed()) return run_census(c, min_n, max_n, min_conn, !no_alpha, report);
        if (cat_verify->parsed()) return run_catalog_verify(c, full);
        if (cat_derive->parsed()) return run_catalog_derive(c, derive_out, with_families);
        if (convert->parsed()) return run_convert(c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
