#include "gconn/io.hpp"

#include <cctype>
#include <sstream>

#include "gconn/error.hpp"

namespace gconn {

namespace {

constexpr int kG6Base = 63;      // printable offset
constexpr int kG6MaxOrder = 100000; // sanity cap, far above any budget here

// Pair order used by the format: (0,1),(0,2),(1,2),(0,3),... i.e. columns of
// the upper triangle.
template <class F>
void for_each_pair(int n, F&& f) {
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) f(i, j);
}

} // namespace

MultiGraph decode_graph6(const std::string& text) {
    if (text.empty()) throw InputError("graph6: empty input");
    size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= text.size()) throw InputError("graph6: truncated input");
        unsigned char c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126) throw InputError("graph6: byte out of range at position " + std::to_string(pos - 1));
        return c - kG6Base;
    };

    long long n = 0;
    int first = next();
    if (first < 63) {
        n = first;
    } else {
        // '~' escape: 3 or 6 more size bytes.
        int second = next();
        if (second < 63) {
            n = second;
            for (int t = 0; t < 2; ++t) n = (n << 6) | next();
        } else {
            n = 0;
            for (int t = 0; t < 6; ++t) n = (n << 6) | next();
        }
    }
    if (n > kG6MaxOrder) throw InputError("graph6: declared order too large");

    const long long nbits = n * (n - 1) / 2;
    const size_t nbytes = static_cast<size_t>((nbits + 5) / 6);
    if (text.size() - pos != nbytes) throw InputError("graph6: body length mismatch");

    std::vector<std::pair<int, int>> edges;
    int acc = 0, have = 0;
    long long bit = 0;
    for_each_pair(static_cast<int>(n), [&](int i, int j) {
        if (have == 0) {
            acc = next();
            have = 6;
        }
        if (acc & (1 << (have - 1))) edges.emplace_back(i, j);
        --have;
        ++bit;
    });
    if (have > 0 && (acc & ((1 << have) - 1)) != 0) throw InputError("graph6: nonzero padding bits");
    return MultiGraph(static_cast<int>(n), std::move(edges));
}

std::string encode_graph6(const MultiGraph& g) {
    if (!g.is_simple()) throw InputError("graph6: graph has parallel edges");
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kG6Base));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + kG6Base));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kG6Base));
        out.push_back(static_cast<char>((n & 63) + kG6Base));
    } else {
        throw InputError("graph6: order too large to encode");
    }
    auto mat = g.multiplicity_matrix();
    int acc = 0, have = 0;
    for_each_pair(n, [&](int i, int j) {
        acc = (acc << 1) | (mat[i][j] ? 1 : 0);
        if (++have == 6) {
            out.push_back(static_cast<char>(acc + kG6Base));
            acc = 0;
            have = 0;
        }
    });
    if (have > 0) out.push_back(static_cast<char>((acc << (6 - have)) + kG6Base));
    return out;
}

std::string to_dot(const MultiGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    std::vector<bool> touched(static_cast<size_t>(g.order()), false);
    for (const auto& [u, v] : g.edges()) touched[u] = touched[v] = true;
    for (int v = 0; v < g.order(); ++v)
        if (!touched[static_cast<size_t>(v)]) os << "  " << v << ";\n";
    for (const auto& [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

MultiGraph from_dot(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    bool in_body = false, closed = false;
    int max_v = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> singles;
    auto parse_int = [](const std::string& s, size_t& p) -> int {
        size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start) throw InputError("dot: expected integer vertex id");
        return std::stoi(s.substr(start, p - start));
    };
    while (std::getline(is, line)) {
        size_t p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos) continue;
        if (!in_body) {
            if (line.find("graph") == std::string::npos || line.find('{') == std::string::npos)
                throw InputError("dot: expected 'graph <name> {'");
            in_body = true;
            continue;
        }
        if (line[p] == '}') {
            closed = true;
            break;
        }
        int u = parse_int(line, p);
        max_v = std::max(max_v, u);
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
        if (p < line.size() && line[p] == ';') {
            singles.push_back(u);
            continue;
        }
        if (p + 1 >= line.size() || line[p] != '-' || line[p + 1] != '-')
            throw InputError("dot: expected '--' or ';'");
        p += 2;
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
        int v = parse_int(line, p);
        max_v = std::max(max_v, v);
        edges.emplace_back(u, v);
    }
    if (!in_body || !closed) throw InputError("dot: missing graph body");
    return MultiGraph(max_v + 1, std::move(edges));
}

} // namespace gconn
