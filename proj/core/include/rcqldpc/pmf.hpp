#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rcq {

// One row of a joint pmf P(X, T) over the binary channel input X and a
// discrete observable T: p0 = P(X=0, T=t), p1 = P(X=1, T=t), and the
// log-likelihood ratio llr = ln(p0/p1) of that row.
struct PmfEntry {
    double p0 = 0.0;
    double p1 = 0.0;
    double llr = 0.0;
};

// ln(p0/p1) with the conventional infinities at the boundary.
double entry_llr(double p0, double p1);

class BinaryJointPmf;

// I(X;T) of the masses viewed as a distribution (scaled to unit total).
// Equals mutual_information_bits() for normalized input, but never throws,
// so sub-normalized worked inputs still get a well-defined value.
double normalized_mi_bits(const BinaryJointPmf& pmf);

// Joint pmf of the binary input and a discrete observable, stored with rows
// sorted by non-increasing llr.  Rows with p1 == 0 (llr = +inf) come first
// and rows with p0 == 0 (llr = -inf) come last.
//
// The `symmetric` flag records an exact structural property, not a tolerance
// check: entry j mirrors entry N-1-j with p0[j] == p1[N-1-j] bitwise and
// llr[j] == -llr[N-1-j] bitwise.  Symmetric pmfs are always built by
// computing the left (positive-llr) half and mirroring it, so the flag is
// trustworthy by construction.  Mass that sits exactly at llr == 0 is stored
// as a twin pair of identical half-entries, keeping N even and every row in
// a clean mirror pair.
class BinaryJointPmf {
  public:
    BinaryJointPmf() = default;

    // Canonicalizes arbitrary (p0, p1) rows: drops all-zero rows, sorts by
    // decreasing llr, merges rows with exactly equal llr, and detects exact
    // mirror symmetry (rebuilding through the mirrored constructor when it
    // holds, so the symmetric representation is bitwise canonical).
    static BinaryJointPmf from_masses(std::vector<std::pair<double, double>> masses);

    // Builds a symmetric pmf from its strictly-positive-llr half, ordered by
    // decreasing llr, plus the total mass at llr exactly 0.  Each half entry
    // (p0, p1) yields a mirror entry (p1, p0); the zero mass becomes a twin
    // pair of (z/4, z/4) rows.
    static BinaryJointPmf build_symmetric(const std::vector<std::pair<double, double>>& positive_half,
                                          double zero_mass);

    // Keeps the given symbol order: entry i stays row i, llrs are computed
    // per row, and no sorting or merging happens.  Used for alphabets whose
    // index carries meaning (e.g. sign-magnitude message alphabets).
    static BinaryJointPmf from_symbol_order(const std::vector<std::pair<double, double>>& masses);

    // Adopts pre-canonicalized rows verbatim (already sorted, llrs set).
    // The caller asserts symmetry; used by internal mirrored constructions.
    static BinaryJointPmf from_canonical(std::vector<PmfEntry> entries, bool symmetric);

    std::size_t size() const { return entries_.size(); }
    const PmfEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<PmfEntry>& entries() const { return entries_; }
    bool symmetric() const { return symmetric_; }

    double total_mass() const;

    // P(X=0) marginal.
    double prior0() const;

    // I(X; T) in bits from the stored joint masses (0 log 0 = 0).  Throws
    // std::invalid_argument when |total_mass() - 1| > 1e-9.
    double mutual_information_bits() const;

    // Divides every mass by total_mass() and returns the correction factor
    // |1 - total|.  Division by a shared scalar preserves exact mirror
    // equality, so symmetry survives.
    double renormalize();

    // True when llrs are non-increasing front to back (always holds for
    // canonical pmfs; symbol-ordered alphabets may violate it).
    bool llr_sorted() const;

  private:
    std::vector<PmfEntry> entries_;
    bool symmetric_ = false;
};

}  // namespace rcq
