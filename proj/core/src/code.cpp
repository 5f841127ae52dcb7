#include "rcqldpc/code.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "rcqldpc/errors.hpp"

namespace rcq {

TannerGraph::TannerGraph(std::size_t n_checks, std::vector<std::vector<std::size_t>> adjacency)
    : var_adj_(std::move(adjacency)),
      check_adj_(n_checks),
      var_edge_(var_adj_.size()),
      check_edge_(n_checks) {
    std::vector<std::size_t> seen_at(n_checks, static_cast<std::size_t>(-1));
    std::size_t edge = 0;
    for (std::size_t v = 0; v < var_adj_.size(); ++v) {
        var_edge_[v].reserve(var_adj_[v].size());
        for (std::size_t c : var_adj_[v]) {
            if (c >= n_checks) throw std::invalid_argument("check index out of range");
            if (seen_at[c] == v) throw std::invalid_argument("repeated edge in adjacency");
            seen_at[c] = v;
            check_adj_[c].push_back(v);
            check_edge_[c].push_back(edge);
            var_edge_[v].push_back(edge);
            ++edge;
        }
        max_var_degree_ = std::max(max_var_degree_, var_adj_[v].size());
    }
    n_edges_ = edge;
    for (const auto& row : check_adj_) {
        max_check_degree_ = std::max(max_check_degree_, row.size());
    }
}

DegreeDistribution degree_distributions(const TannerGraph& g) {
    std::map<std::size_t, std::size_t> var_edges;
    std::map<std::size_t, std::size_t> check_edges;
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        const std::size_t d = g.var_checks(v).size();
        if (d > 0) var_edges[d] += d;
    }
    for (std::size_t c = 0; c < g.n_checks(); ++c) {
        const std::size_t d = g.check_vars(c).size();
        if (d > 0) check_edges[d] += d;
    }
    DegreeDistribution out;
    const double total = static_cast<double>(g.n_edges());
    for (const auto& [d, e] : var_edges) out.lambda[d] = static_cast<double>(e) / total;
    for (const auto& [d, e] : check_edges) out.rho[d] = static_cast<double>(e) / total;
    return out;
}

SyndromeResult syndrome(const TannerGraph& g, const std::vector<std::uint8_t>& bits) {
    if (bits.size() != g.n_vars()) throw std::invalid_argument("bit vector length mismatch");
    SyndromeResult out;
    for (std::size_t c = 0; c < g.n_checks(); ++c) {
        unsigned parity = 0;
        for (std::size_t v : g.check_vars(c)) parity ^= bits[v] & 1u;
        out.unsatisfied += parity;
    }
    out.is_codeword = (out.unsatisfied == 0);
    return out;
}

namespace {

// Whitespace tokenizer that remembers the source line of every token, so
// parse errors can name where the input went wrong.
class Tokens {
  public:
    explicit Tokens(std::istream& in) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                toks_.push_back(tok);
                lines_.push_back(line_no);
            }
        }
        last_line_ = line_no;
    }

    bool done() const { return pos_ >= toks_.size(); }

    long next(const std::string& what) {
        if (done()) {
            throw parse_error("line " + std::to_string(last_line_) + ": input ended while reading " +
                              what);
        }
        const std::string& tok = toks_[pos_];
        const std::size_t line = lines_[pos_];
        ++pos_;
        try {
            std::size_t used = 0;
            const long value = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return value;
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(line) + ": expected an integer for " + what +
                              ", got '" + tok + "'");
        }
    }

    long next_in(const std::string& what, long lo, long hi) {
        const long v = next(what);
        if (v < lo || v > hi) {
            throw parse_error("line " + std::to_string(lines_[pos_ - 1]) + ": " + what + " = " +
                              std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        }
        return v;
    }

    bool peek_is_zero() const { return !done() && toks_[pos_] == "0"; }

    std::size_t current_line() const {
        return pos_ < lines_.size() ? lines_[pos_] : last_line_;
    }

  private:
    std::vector<std::string> toks_;
    std::vector<std::size_t> lines_;
    std::size_t pos_ = 0;
    std::size_t last_line_ = 0;
};

// One node's index list: exactly `degree` 1-based indices, then optional
// zero padding up to `max_degree` (both alist paddings are in the wild).
std::vector<std::size_t> read_index_list(Tokens& t, const std::string& what, std::size_t degree,
                                         std::size_t max_degree, std::size_t limit) {
    std::vector<std::size_t> out;
    out.reserve(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        const long v = t.next_in(what, 1, static_cast<long>(limit));
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    for (std::size_t i = degree; i < max_degree && t.peek_is_zero(); ++i) {
        t.next(what + " padding");
    }
    return out;
}

}  // namespace

TannerGraph parse_alist(std::istream& in) {
    Tokens t(in);
    const auto n = static_cast<std::size_t>(t.next_in("variable count", 1, 100000000));
    const auto m = static_cast<std::size_t>(t.next_in("check count", 1, 100000000));
    const auto max_col = static_cast<std::size_t>(t.next_in("max column degree", 1, static_cast<long>(m)));
    const auto max_row = static_cast<std::size_t>(t.next_in("max row degree", 1, static_cast<long>(n)));

    std::vector<std::size_t> col_deg(n);
    std::vector<std::size_t> row_deg(m);
    std::size_t col_edges = 0;
    std::size_t row_edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
        col_deg[v] = static_cast<std::size_t>(
            t.next_in("column degree", 1, static_cast<long>(max_col)));
        col_edges += col_deg[v];
    }
    for (std::size_t c = 0; c < m; ++c) {
        row_deg[c] = static_cast<std::size_t>(
            t.next_in("row degree", 1, static_cast<long>(max_row)));
        row_edges += row_deg[c];
    }
    if (col_edges != row_edges) {
        throw parse_error("line " + std::to_string(t.current_line()) +
                          ": column degrees sum to " + std::to_string(col_edges) +
                          " but row degrees sum to " + std::to_string(row_edges));
    }

    std::vector<std::vector<std::size_t>> var_adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        var_adj[v] = read_index_list(t, "row index", col_deg[v], max_col, m);
        std::vector<std::size_t> sorted = var_adj[v];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw parse_error("line " + std::to_string(t.current_line()) + ": column " +
                              std::to_string(v + 1) + " lists a row twice");
        }
    }

    std::vector<std::vector<std::size_t>> check_seen(m);
    for (std::size_t c = 0; c < m; ++c) {
        check_seen[c] = read_index_list(t, "column index", row_deg[c], max_row, n);
    }

    TannerGraph g(m, std::move(var_adj));
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<std::size_t> expected = g.check_vars(c);
        std::sort(expected.begin(), expected.end());
        std::sort(check_seen[c].begin(), check_seen[c].end());
        if (expected != check_seen[c]) {
            throw parse_error("row section: row " + std::to_string(c + 1) +
                              " disagrees with the column section");
        }
    }
    return g;
}

TannerGraph parse_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open alist file: " + path);
    return parse_alist(in);
}

std::string serialize_alist(const TannerGraph& g) {
    std::ostringstream out;
    const std::size_t n = g.n_vars();
    const std::size_t m = g.n_checks();
    out << n << ' ' << m << '\n';
    out << g.max_var_degree() << ' ' << g.max_check_degree() << '\n';
    for (std::size_t v = 0; v < n; ++v) {
        out << g.var_checks(v).size() << (v + 1 < n ? ' ' : '\n');
    }
    for (std::size_t c = 0; c < m; ++c) {
        out << g.check_vars(c).size() << (c + 1 < m ? ' ' : '\n');
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto& checks = g.var_checks(v);
        for (std::size_t i = 0; i < g.max_var_degree(); ++i) {
            out << (i < checks.size() ? checks[i] + 1 : 0) << (i + 1 < g.max_var_degree() ? ' ' : '\n');
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        const auto& vars = g.check_vars(c);
        for (std::size_t i = 0; i < g.max_check_degree(); ++i) {
            out << (i < vars.size() ? vars[i] + 1 : 0) << (i + 1 < g.max_check_degree() ? ' ' : '\n');
        }
    }
    return out.str();
}

QcBaseMatrix parse_qc(std::istream& in) {
    Tokens t(in);
    QcBaseMatrix base;
    base.rows = static_cast<std::size_t>(t.next_in("base rows", 1, 1000000));
    base.cols = static_cast<std::size_t>(t.next_in("base cols", 1, 1000000));
    base.lift = static_cast<std::size_t>(t.next_in("lift size", 1, 1000000));
    base.entries.reserve(base.rows * base.cols);
    for (std::size_t k = 0; k < base.rows * base.cols; ++k) {
        base.entries.push_back(static_cast<int>(t.next_in("shift", -1, 1000000)));
    }
    if (!t.done()) {
        throw parse_error("line " + std::to_string(t.current_line()) +
                          ": trailing data after the base matrix");
    }
    return base;
}

QcBaseMatrix parse_qc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open QC file: " + path);
    return parse_qc(in);
}

TannerGraph expand_qc(const QcBaseMatrix& base) {
    if (base.rows == 0 || base.cols == 0 || base.lift == 0 ||
        base.entries.size() != base.rows * base.cols) {
        throw std::invalid_argument("malformed base matrix");
    }
    const std::size_t z = base.lift;
    for (int s : base.entries) {
        if (s < -1 || (s >= 0 && static_cast<std::size_t>(s) >= z)) {
            throw std::invalid_argument("circulant shift outside [0, lift)");
        }
    }
    for (std::size_t r = 0; r < base.rows; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < base.cols; ++c) any = any || base.at(r, c) >= 0;
        if (!any) throw std::invalid_argument("base row " + std::to_string(r) + " is all zero blocks");
    }
    for (std::size_t c = 0; c < base.cols; ++c) {
        bool any = false;
        for (std::size_t r = 0; r < base.rows; ++r) any = any || base.at(r, c) >= 0;
        if (!any) throw std::invalid_argument("base column " + std::to_string(c) + " is all zero blocks");
    }

    std::vector<std::vector<std::size_t>> var_adj(base.cols * z);
    for (std::size_t c = 0; c < base.cols; ++c) {
        for (std::size_t j = 0; j < z; ++j) {
            auto& checks = var_adj[c * z + j];
            for (std::size_t r = 0; r < base.rows; ++r) {
                const int s = base.at(r, c);
                if (s < 0) continue;
                const std::size_t i = (j + z - static_cast<std::size_t>(s) % z) % z;
                checks.push_back(r * z + i);
            }
        }
    }
    return TannerGraph(base.rows * z, std::move(var_adj));
}

TannerGraph load_code_file(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "alist") return parse_alist_file(path);
    if (ext == "qc") return expand_qc(parse_qc_file(path));
    throw parse_error("unknown code file extension (expected .alist or .qc): " + path);
}

}  // namespace rcq
