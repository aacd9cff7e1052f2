#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace relaylab::sweep {

// family: "sym2" (rate/g), "symN" (rate/g, N relays), "asym2" (rate/sqrt(gh)),
// "energy" (upper/lower energy-per-bit ratio).
//
// Scheme labels per family:
//   sym2:   cutset df baf bspdf bspdf_r1 bspdf_r2 tspdf ts_df_baf ts_bspdf
//   symN:   cutset df baf bspdf, optionally suffixed _n<N> to override n_relays
//   asym2:  cutset df baf bafdf bspdf11 bspdf12
//   energy: df baf bspdf
struct SweepJob {
    std::string family = "sym2";
    std::vector<std::string> schemes;
    double x_min = 1e-2;
    double x_max = 1e2;
    int points = 81;
    bool log_spaced = true;
    int n_relays = 2;
    std::uint64_t seed = 7;

    void validate() const;
};

struct CsvRow {
    double x;
    std::string scheme;
    double y;
    std::string params_json;
    bool boundary;
};

std::vector<double> grid(const SweepJob& job);

// Rows sorted by x, then scheme label. Row values do not depend on `threads`.
std::vector<CsvRow> run(const SweepJob& job, int threads);

// Preset jobs for fig3 ... fig8 (fig6 spans N = 2, 4, 8 through label suffixes).
SweepJob figure_job(const std::string& figure, std::uint64_t seed);

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);

// Minimal RFC 4180 reader for files produced by write_csv.
std::vector<CsvRow> read_csv(std::istream& is);

struct Violation {
    double x;
    std::string scheme;
    double y;
    double bound;
};
// Achievable-scheme rows that exceed the cut-set row at the same x (matching
// the _n<N> suffix where present). Families without cut-set rows pass trivially.
std::vector<Violation> verify(const std::vector<CsvRow>& rows, double rel_tol = 1e-9);

// RELAYLAB_THREADS when set to a positive integer, else the hardware thread count.
int default_threads();

}  // namespace relaylab::sweep
