#pragma once

#include "subdiffcq/oracle.hpp"
#include "subdiffcq/source_smoothing.hpp"
#include "subdiffcq/spatial.hpp"
#include "subdiffcq/stepper.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subdiffcq {

// One line of a refinement study: error = ||u^{N/2} - u^N||_{l2} at t = T,
// rate = log2 of the error drop from the previous row (absent on the first).
struct ConvergenceRow {
    int N = 0;
    Real error{0};
    std::optional<Real> rate;
};

struct ExperimentCase {
    std::string id;        // a | b-conv | b-prod | scalar | oracle-compare | baseline
    Real alpha{Real(3) / 10};
    Real mu{Real(-4) / 10};
    int k = 6;
    int m = 1;
    std::vector<int> N_list;
    int M = 32;
    unsigned prec_bits = 256;
    Real T{1};
    int quad_n = 64;
    Exec exec = Exec::Parallel;
};

// Initial data of the paper's experiments: v(x) = sin(x) sqrt(1 - x^2).
Real initial_profile(const Real& x);

// Spatial factor of case (b): e^x (1 + chi_(0,1)(x)), chi evaluated pointwise
// with chi(0) = chi(1) = 0.
Real case_b_spatial(const Real& x);

// Time kernel of case (b): (1 + t^mu) combined with f(t) = e^t + 1.
SourceSpec make_source(const ExperimentCase& c);

std::vector<ConvergenceRow> run_study(const ExperimentCase& c);

// Errors measured against contour_solution instead of successive differences;
// requires a zero or pure-power source.
std::vector<ConvergenceRow> run_oracle_compare(const ExperimentCase& c);

enum class TableFormat { Csv, Markdown };
void emit(const std::vector<ConvergenceRow>& rows, TableFormat format, const std::string& path);
std::vector<ConvergenceRow> parse_rows_csv(const std::string& path);

void write_weights_csv(const WeightTable& table, const std::string& path);

// Least-squares slope of log2(error) vs log2(N); the fitted convergence order.
Real fitted_order(const std::vector<ConvergenceRow>& rows);

} // namespace subdiffcq
