#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rcq {

// Bipartite parity-check graph with a fixed variable-major edge numbering:
// edge k is the k-th entry when walking variables in index order and each
// variable's checks in adjacency order.  Decoder message arrays are indexed
// by this numbering.
class TannerGraph {
  public:
    // adjacency[v] lists the checks of variable v, in the order that defines
    // the edge numbering.  Throws invalid_argument on out-of-range or
    // duplicate edges.  Isolated nodes are tolerated here (handy for tiny
    // synthetic graphs); the file parsers reject them.
    TannerGraph(std::size_t n_checks, std::vector<std::vector<std::size_t>> adjacency);

    std::size_t n_vars() const { return var_adj_.size(); }
    std::size_t n_checks() const { return check_adj_.size(); }
    std::size_t n_edges() const { return n_edges_; }

    const std::vector<std::size_t>& var_checks(std::size_t v) const { return var_adj_[v]; }
    const std::vector<std::size_t>& check_vars(std::size_t c) const { return check_adj_[c]; }

    // Edge indices in variable-major order.
    const std::vector<std::size_t>& var_edges(std::size_t v) const { return var_edge_[v]; }
    const std::vector<std::size_t>& check_edges(std::size_t c) const { return check_edge_[c]; }

    std::size_t max_var_degree() const { return max_var_degree_; }
    std::size_t max_check_degree() const { return max_check_degree_; }

  private:
    std::vector<std::vector<std::size_t>> var_adj_;
    std::vector<std::vector<std::size_t>> check_adj_;
    std::vector<std::vector<std::size_t>> var_edge_;
    std::vector<std::vector<std::size_t>> check_edge_;
    std::size_t n_edges_ = 0;
    std::size_t max_var_degree_ = 0;
    std::size_t max_check_degree_ = 0;
};

// Edge-perspective degree distribution: coefficient of degree d is the
// fraction of edges incident to degree-d nodes.  Fractions are exact
// rationals (edge counts over the total) converted to double at the end.
struct DegreeDistribution {
    std::map<std::size_t, double> lambda;  // variable side
    std::map<std::size_t, double> rho;     // check side
};

DegreeDistribution degree_distributions(const TannerGraph& g);

// Parity checks of a hard-decision vector: number of unsatisfied checks and
// whether all are satisfied.  Throws invalid_argument on length mismatch.
struct SyndromeResult {
    bool is_codeword = false;
    std::size_t unsatisfied = 0;
};

SyndromeResult syndrome(const TannerGraph& g, const std::vector<std::uint8_t>& bits);

// alist text format: "n m", "max_col max_row", per-column degrees,
// per-row degrees, then 1-based row indices per column and column indices
// per row, zero-padded to the max degree.  parse_alist throws parse_error
// (with a line number) on truncation, inconsistent counts, out-of-range
// indices, or duplicate edges, and rejects zero-degree nodes.
TannerGraph parse_alist(std::istream& in);
TannerGraph parse_alist_file(const std::string& path);
std::string serialize_alist(const TannerGraph& g);

// Quasi-cyclic base matrix: entry -1 is the Z x Z zero block, entry s in
// [0, Z) the identity circulant shifted by s (block row r, block column c
// connect check r*Z+i to variable c*Z + (i+s) mod Z).
struct QcBaseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t lift = 0;
    std::vector<int> entries;  // rows*cols, row-major

    int at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Text format: first line "rows cols Z", then rows*cols integers.
QcBaseMatrix parse_qc(std::istream& in);
QcBaseMatrix parse_qc_file(const std::string& path);

TannerGraph expand_qc(const QcBaseMatrix& base);

// Loads a parity-check matrix by extension: ".alist" or ".qc".
TannerGraph load_code_file(const std::string& path);

}  // namespace rcq
