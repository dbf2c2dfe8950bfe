#include "subdiffcq/harness.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace subdiffcq {

Real initial_profile(const Real& x) { return sin(x) * sqrt(1 - x * x); }

Real case_b_spatial(const Real& x) {
    Real chi = (x > 0 && x < 1) ? Real(1) : Real(0);
    return exp(x) * (1 + chi);
}

SourceSpec make_source(const ExperimentCase& c) {
    SourceSpec spec;
    if (c.id == "a" || c.id == "scalar") {
        spec.mode = KernelMode::None;
        return spec;
    }
    if (c.id == "oracle-compare") {
        spec.mode = KernelMode::PurePower;
        spec.time_terms.push_back({Real(1), c.mu, nullptr});
        spec.spatial_profile = case_b_spatial;
        spec.description = "t^mu * e^x (1 + chi_(0,1)(x))";
        return spec;
    }
    if (c.id == "b-conv" || c.id == "b-prod" || c.id == "baseline") {
        spec.mode = (c.id == "b-conv") ? KernelMode::Convolution : KernelMode::Product;
        ScalarFn f = [](const Real& s) { return exp(s) + 1; };
        spec.time_terms.push_back({Real(1), Real(0), f});
        spec.time_terms.push_back({Real(1), c.mu, f});
        spec.spatial_profile = case_b_spatial;
        spec.description = "(1 + t^mu) o (e^t + 1) e^x (1 + chi_(0,1)(x))";
        return spec;
    }
    throw std::invalid_argument("unknown experiment case '" + c.id + "'");
}

namespace {

void check_n_list(const ExperimentCase& c) {
    if (c.N_list.empty()) throw std::invalid_argument("study: N-list must be nonempty");
    if (c.N_list.front() < 2 * c.k)
        throw std::invalid_argument("study: smallest N must be >= 2k");
    for (std::size_t i = 1; i < c.N_list.size(); ++i)
        if (c.N_list[i] != 2 * c.N_list[i - 1])
            throw std::invalid_argument("study: N-list must strictly double");
}

SchemeConfig config_for(const ExperimentCase& c, int N) {
    SchemeConfig cfg;
    cfg.alpha = c.alpha;
    cfg.k = c.k;
    cfg.m = c.m;
    cfg.N = N;
    cfg.T = c.T;
    cfg.prec_bits = c.prec_bits;
    cfg.M = c.M;
    return cfg;
}

// Final-time solution of one march at the given N.
Vector march_final(const ExperimentCase& c, const SpatialOperator& op, const Vector& v,
                   const SourceSpec& spec, int N) {
    SchemeConfig cfg = config_for(c, N);
    IdmBdfkStepper stepper(cfg, op.A_interior, c.exec);
    Vector q;
    if (spec.mode != KernelMode::None) q = sample_interior(op, spec.spatial_profile);

    if (c.m == 0) {
        std::vector<Real> g(N + 1, Real(0));
        if (spec.mode != KernelMode::None) {
            const Real tau = c.T / N;
            for (int n = 1; n <= N; ++n) g[n] = eval_time_kernel(spec, tau * n, c.quad_n);
        }
        return stepper.march_baseline(v, q, g).final_u();
    }

    std::vector<Real> G;
    if (spec.mode != KernelMode::None)
        G = build_smoothed_table(spec, c.m, N, c.T, c.quad_n, c.exec).values;
    return stepper.march(v, q, G).final_u();
}

std::vector<ConvergenceRow> scalar_study(const ExperimentCase& c) {
    // Diagonal sanity model: A = -1, v = 1, g = 0; errors vs the
    // Mittag-Leffler reference at t = T.
    Matrix A(1, 1);
    A(0, 0) = -1;
    Real ref = scalar_reference(c.alpha, Real(1), Real(1), c.T);
    std::vector<ConvergenceRow> rows;
    for (int N : c.N_list) {
        SchemeConfig cfg = config_for(c, N);
        IdmBdfkStepper stepper(cfg, A, c.exec);
        Vector uT = c.m == 0 ? stepper.march_baseline({Real(1)}, {}, {}).final_u()
                             : stepper.march({Real(1)}, {}, {}).final_u();
        ConvergenceRow row;
        row.N = N;
        row.error = abs(uT[0] - ref);
        if (!rows.empty() && rows.back().error > 0 && row.error > 0)
            row.rate = log(rows.back().error / row.error) / log(Real(2));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Parameters constructed before set_working_bits() would otherwise narrow the
// precision of every expression they enter.
ExperimentCase normalized(ExperimentCase c) {
    c.alpha = prec::at_working(c.alpha);
    c.mu = prec::at_working(c.mu);
    c.T = prec::at_working(c.T);
    return c;
}

} // namespace

std::vector<ConvergenceRow> run_study(const ExperimentCase& raw) {
    prec::set_working_bits(raw.prec_bits);
    const ExperimentCase c = normalized(raw);
    check_n_list(c);
    if (c.id == "scalar") return scalar_study(c);

    SpatialOperator op = build_spatial(c.M);
    Vector v = sample_interior(op, initial_profile);
    SourceSpec spec = make_source(c);

    // Successive-difference errors need the half-resolution run as well.
    std::map<int, Vector> finals;
    finals[c.N_list.front() / 2] = march_final(c, op, v, spec, c.N_list.front() / 2);
    for (int N : c.N_list) finals[N] = march_final(c, op, v, spec, N);

    std::vector<ConvergenceRow> rows;
    for (int N : c.N_list) {
        const Vector& coarse = finals.at(N / 2);
        const Vector& fine = finals.at(N);
        Vector diff(fine.size());
        for (std::size_t i = 0; i < fine.size(); ++i) diff[i] = coarse[i] - fine[i];
        ConvergenceRow row;
        row.N = N;
        row.error = discrete_l2_norm(diff, op);
        if (!rows.empty() && rows.back().error > 0 && row.error > 0)
            row.rate = log(rows.back().error / row.error) / log(Real(2));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ConvergenceRow> run_oracle_compare(const ExperimentCase& raw) {
    prec::set_working_bits(raw.prec_bits);
    const ExperimentCase c = normalized(raw);
    check_n_list(c);
    SourceSpec spec = make_source(c);
    if (spec.mode != KernelMode::None && spec.mode != KernelMode::PurePower)
        throw std::invalid_argument("oracle-compare: source must be zero or pure-power");

    SpatialOperator op = build_spatial(c.M);
    Vector v = sample_interior(op, initial_profile);
    Vector q;
    if (spec.mode == KernelMode::PurePower) q = sample_interior(op, spec.spatial_profile);

    ContourParams params = ContourParams::defaults(c.T);
    Vector ref = contour_solution(c.alpha, op.A_interior, v, c.mu, q, c.T, params, c.exec);

    std::vector<ConvergenceRow> rows;
    for (int N : c.N_list) {
        Vector uT = march_final(c, op, v, spec, N);
        Vector diff(uT.size());
        for (std::size_t i = 0; i < uT.size(); ++i) diff[i] = uT[i] - ref[i];
        ConvergenceRow row;
        row.N = N;
        row.error = discrete_l2_norm(diff, op);
        if (!rows.empty() && rows.back().error > 0 && row.error > 0)
            row.rate = log(rows.back().error / row.error) / log(Real(2));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {
std::string real_str(const Real& x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(prec::working_digits()) << x;
    return os.str();
}
} // namespace

void emit(const std::vector<ConvergenceRow>& rows, TableFormat format, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit: rows must be nonempty");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    if (format == TableFormat::Csv) {
        out << "N,error,rate\n";
        for (const auto& r : rows) {
            out << r.N << "," << real_str(r.error) << ",";
            if (r.rate) out << real_str(*r.rate);
            out << "\n";
        }
    } else {
        out << "| N | error | rate |\n|---|-------|------|\n";
        for (const auto& r : rows) {
            out << "| " << r.N << " | " << r.error.str(5, std::ios_base::scientific) << " | ";
            if (r.rate) out << r.rate->str(5);
            out << " |\n";
        }
    }
    if (!out.good()) throw std::runtime_error("emit: write to '" + path + "' failed");
}

std::vector<ConvergenceRow> parse_rows_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_rows_csv: cannot open '" + path + "'");
    std::string line;
    std::getline(in, line); // header
    std::vector<ConvergenceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string n, err, rate;
        std::getline(ss, n, ',');
        std::getline(ss, err, ',');
        std::getline(ss, rate, ',');
        ConvergenceRow row;
        row.N = std::stoi(n);
        row.error = Real(err);
        if (!rate.empty()) row.rate = Real(rate);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_weights_csv(const WeightTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_weights_csv: cannot open '" + path + "'");
    out << "j,weight\n";
    for (std::size_t j = 0; j < table.weights.size(); ++j)
        out << j << "," << real_str(table.weights[j]) << "\n";
    if (!out.good()) throw std::runtime_error("write_weights_csv: write failed");
}

Real fitted_order(const std::vector<ConvergenceRow>& rows) {
    // Least squares on log2(err) = a - order * log2(N).
    if (rows.size() < 2) throw std::invalid_argument("fitted_order: need >= 2 rows");
    Real sx(0), sy(0), sxx(0), sxy(0);
    const Real ln2 = log(Real(2));
    long n = 0;
    for (const auto& r : rows) {
        if (r.error <= 0) continue;
        Real x = log(Real(r.N)) / ln2;
        Real y = log(r.error) / ln2;
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fitted_order: need >= 2 nonzero errors");
    return -(Real(n) * sxy - sx * sy) / (Real(n) * sxx - sx * sx);
}

} // namespace subdiffcq
