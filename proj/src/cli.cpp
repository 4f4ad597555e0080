#include "lnlaplace/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "lnlaplace/approximations.hpp"
#include "lnlaplace/errors.hpp"
#include "lnlaplace/inversion.hpp"
#include "lnlaplace/laplace.hpp"
#include "lnlaplace/special_functions.hpp"

namespace lnlaplace::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kBenchmarkTol = 1e-15;

// ---------------------------------------------------------------------------
// Formatting and parsing helpers.
// ---------------------------------------------------------------------------

std::string fmt(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

std::string fmt_full(double v) { return fmt(v, 17); }
std::string fmt_table(double v) { return fmt(v, 5); }

complex_t parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument("bad complex literal: " + text);
        }
        return complex_t(re, 0.0);
    }
    s.pop_back();  // drop the trailing i
    if (s.empty() || s == "+") return complex_t(0.0, 1.0);
    if (s == "-") return complex_t(0.0, -1.0);
    // Split at the last +/- that is not a leading sign or an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        size_t pos = 0;
        const double im = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument("bad complex literal: " + text);
        }
        return complex_t(0.0, im);
    }
    size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) throw std::invalid_argument("bad complex literal: " + text);
    std::string im_text = s.substr(split);
    if (im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
    const double im = std::stod(im_text, &pos);
    if (pos != im_text.size()) {
        throw std::invalid_argument("bad complex literal: " + text);
    }
    return complex_t(re, im);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("grid must be start:stop:step, got " + text);
    }
    const double start = std::stod(parts[0]);
    const double stop = std::stod(parts[1]);
    const double step = std::stod(parts[2]);
    if (!(step > 0.0) || !(stop >= start)) {
        throw std::invalid_argument("grid requires step > 0 and stop >= start");
    }
    std::vector<double> grid;
    const long n = std::lround(std::floor((stop - start) / step + 1e-9));
    grid.reserve(static_cast<size_t>(n) + 1);
    for (long j = 0; j <= n; ++j) grid.push_back(start + j * step);
    return grid;
}

std::vector<LognormalParams> parse_components(const std::string& text) {
    std::vector<LognormalParams> out;
    if (text.empty()) return out;
    for (const std::string& item : split(text, ',')) {
        const auto fields = split(item, ':');
        if (fields.size() != 2) {
            throw std::invalid_argument("component must be mu:sigma, got " +
                                        item);
        }
        out.emplace_back(std::stod(fields[0]), std::stod(fields[1]));
    }
    return out;
}

int worker_count(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("LNLAPLACE_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) n = static_cast<unsigned>(parsed);
        // 0 (or unparsable) keeps the automatic count
    }
    if (n == 0) n = 1;
    return static_cast<int>(std::min<size_t>(n, jobs));
}

// Index-parallel map; output slots are preassigned, so the result is
// independent of scheduling.
void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const int workers = worker_count(count);
    if (workers <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = static_cast<size_t>(w); i < count;
                     i += static_cast<size_t>(workers)) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// ---------------------------------------------------------------------------
// Output sinks: CSV or JSON, stdout or file.
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;  // emitted with a '#' prefix (CSV)
};

void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "json") {
        ordered_json records = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json rec;
            for (size_t c = 0; c < table.header.size(); ++c) {
                rec[table.header[c]] = c < row.size() ? row[c] : "";
            }
            records.push_back(rec);
        }
        ordered_json doc;
        doc["records"] = records;
        if (!table.comments.empty()) doc["comments"] = table.comments;
        out << doc.dump(2) << "\n";
        return;
    }
    for (size_t c = 0; c < table.header.size(); ++c) {
        out << (c ? "," : "") << table.header[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << "\n";
    }
    for (const auto& comment : table.comments) {
        out << "# " << comment << "\n";
    }
}

// ---------------------------------------------------------------------------
// Subcommand state.
// ---------------------------------------------------------------------------

struct EvalOptions {
    std::string method;
    double mu = 0.0;
    double sigma = 1.0;
    double alpha = 10.0;
    int terms = 41;
    int n_poles = 5;
    int m_terms = 10;
    double contour_k = 1.0;
    std::string z_list;
    bool boundary = false;
};

struct EvalRecord {
    complex_t z;
    complex_t value;
    std::optional<double> error_bound;
};

EvalRecord eval_point(const EvalOptions& opt, complex_t z) {
    const LognormalParams p(opt.mu, opt.sigma);
    EvalRecord rec;
    rec.z = z;
    if (opt.method == "direct") {
        if (z.real() < 0.0) {
            throw std::invalid_argument(
                "eval --method direct requires Re z >= 0");
        }
        rec.value = direct_transform(z, p);
        return rec;
    }
    CutPlanePoint point =
        (opt.boundary && z.imag() == 0.0 && z.real() < 0.0)
            ? CutPlanePoint::boundary(-z.real())
            : CutPlanePoint::interior(z);
    if (opt.method == "filon") {
        rec.value = continued_transform(point, p);
    } else if (opt.method == "mb") {
        const ContourSpec spec =
            ContourSpec::auto_for(point.log().imag(), p, opt.contour_k);
        rec.value = mellin_barnes_transform(point, p, spec);
    } else if (opt.method == "series") {
        const ApproxResult r =
            small_z_series(point, p, SmallZConfig(opt.alpha, opt.terms));
        rec.value = r.value;
        rec.error_bound = r.error_bound;
    } else if (opt.method == "asym") {
        rec.value =
            sigma_asymptotic(point, p, SigmaAsymConfig(opt.n_poles, opt.m_terms))
                .value;
    } else {
        throw std::invalid_argument("unknown method: " + opt.method);
    }
    return rec;
}

Table run_eval(const EvalOptions& opt) {
    std::vector<complex_t> zs;
    for (const std::string& item : split(opt.z_list, ',')) {
        const complex_t z = parse_complex(item);
        if (z == complex_t(0.0, 0.0) ||
            (z.imag() == 0.0 && z.real() < 0.0 && !opt.boundary)) {
            throw std::invalid_argument("z on branch cut or at origin");
        }
        zs.push_back(z);
    }
    std::vector<EvalRecord> records(zs.size());
    parallel_for(zs.size(),
                 [&](size_t i) { records[i] = eval_point(opt, zs[i]); });
    Table table;
    table.header = {"z_re", "z_im", "method", "value_re", "value_im",
                    "error_bound"};
    for (const EvalRecord& rec : records) {
        table.rows.push_back(
            {fmt_full(rec.z.real()), fmt_full(rec.z.imag()), opt.method,
             fmt_full(rec.value.real()), fmt_full(rec.value.imag()),
             rec.error_bound ? fmt_full(*rec.error_bound) : ""});
    }
    return table;
}

const std::vector<double>& table_z_rows() {
    static const std::vector<double> rows = {0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};
    return rows;
}

double table_value(int table_id, double z, double sigma) {
    const LognormalParams p(0.0, sigma);
    const CutPlanePoint zp = CutPlanePoint::interior(complex_t(z, 0.0));
    const bool series = (table_id == 1 || table_id == 2);
    const double approx =
        series ? small_z_series(zp, p, SmallZConfig(10.0, 41)).value.real()
               : sigma_asymptotic(zp, p, SigmaAsymConfig(5, 10)).value.real();
    if (table_id == 1 || table_id == 3) return approx;
    const double benchmark = direct_transform(complex_t(z, 0.0), p,
                                              kBenchmarkTol).real();
    return std::abs(approx - benchmark);
}

Table run_table(int table_id) {
    if (table_id < 1 || table_id > 4) {
        throw std::invalid_argument("table id must be 1..4");
    }
    const std::vector<double> sigmas =
        (table_id <= 2) ? std::vector<double>{0.0625, 0.25, 0.75, 1.0}
                        : std::vector<double>{1.0, 1.5, 2.0, 2.5};
    const auto& zs = table_z_rows();
    Table table;
    table.header = {"z"};
    for (double s : sigmas) table.header.push_back("sigma=" + fmt(s, 6));
    std::vector<std::vector<double>> cells(zs.size(),
                                           std::vector<double>(sigmas.size()));
    parallel_for(zs.size() * sigmas.size(), [&](size_t idx) {
        const size_t r = idx / sigmas.size();
        const size_t c = idx % sigmas.size();
        cells[r][c] = table_value(table_id, zs[r], sigmas[c]);
    });
    for (size_t r = 0; r < zs.size(); ++r) {
        std::vector<std::string> row = {fmt_table(zs[r])};
        for (size_t c = 0; c < sigmas.size(); ++c) {
            row.push_back(fmt_table(cells[r][c]));
        }
        table.rows.push_back(std::move(row));
    }
    if (table_id == 2 || table_id == 4) {
        table.comments.push_back(
            "benchmark: direct transform by adaptive quadrature, abs tol " +
            fmt(kBenchmarkTol, 3));
    }
    return table;
}

struct DensityOptions {
    std::string components;
    std::string x_grid;
    double t_max_sqrt = 9.0;
    double t_step = 0.01;
    std::string method = "auto";
};

BoundaryMethod parse_method(const std::string& name) {
    if (name == "auto") return BoundaryMethod::Auto;
    if (name == "filon") return BoundaryMethod::ContinuationFilon;
    if (name == "mb") return BoundaryMethod::MellinBarnes;
    if (name == "series") return BoundaryMethod::SmallZSeries;
    throw std::invalid_argument("unknown boundary method: " + name);
}

Table run_density(const DensityOptions& opt) {
    const std::vector<LognormalParams> components =
        parse_components(opt.components);
    if (components.empty()) {
        throw std::invalid_argument("density requires a nonempty component list");
    }
    const std::vector<double> x_nodes = parse_grid(opt.x_grid);
    if (x_nodes.empty() || x_nodes.front() <= 0.0) {
        throw std::invalid_argument("density requires a positive x grid");
    }
    const ComponentList cl{components};
    const auto mesh = build_boundary_mesh(opt.t_max_sqrt, opt.t_step);
    const BoundarySamples bs =
        boundary_transform(cl, mesh, parse_method(opt.method));
    const DensityCurve curve = density_from_boundary(bs, x_nodes);

    Table table;
    const bool with_reference = components.size() == 1;
    table.header = {"x", "f"};
    if (with_reference) table.header.push_back("f_ref");
    for (size_t i = 0; i < curve.x_nodes.size(); ++i) {
        std::vector<std::string> row = {fmt_full(curve.x_nodes[i]),
                                        fmt_full(curve.f_values[i])};
        if (with_reference) {
            row.push_back(fmt_full(components[0].density(curve.x_nodes[i])));
        }
        table.rows.push_back(std::move(row));
    }
    table.comments.push_back("mass_estimate = " + fmt_full(curve.mass_estimate));
    table.comments.push_back("boundary_method = " + bs.method_tag);
    return table;
}

Table run_thorin(double mu, double sigma, const std::string& t_list) {
    const LognormalParams p(mu, sigma);
    std::vector<double> ts;
    for (const std::string& item : split(t_list, ',')) {
        ts.push_back(std::stod(item));
    }
    std::vector<double> us(ts.size());
    parallel_for(ts.size(), [&](size_t i) { us[i] = thorin_density(ts[i], p); });
    Table table;
    table.header = {"t", "u"};
    for (size_t i = 0; i < ts.size(); ++i) {
        table.rows.push_back({fmt_full(ts[i]), fmt_full(us[i])});
    }
    return table;
}

Table run_leipnik(double sigma, double k, const std::string& t_list) {
    std::vector<double> ts;
    for (const std::string& item : split(t_list, ',')) {
        ts.push_back(std::stod(item));
    }
    const LognormalParams p(0.0, sigma);
    struct Row {
        complex_t leipnik, charfn;
    };
    std::vector<Row> rows(ts.size());
    parallel_for(ts.size(), [&](size_t i) {
        rows[i].leipnik = leipnik_formula(ts[i], sigma, k);
        rows[i].charfn = characteristic_function(ts[i], p);
    });
    Table table;
    table.header = {"t",          "leipnik_re", "leipnik_im", "leipnik_abs",
                    "charfn_re",  "charfn_im",  "charfn_abs"};
    for (size_t i = 0; i < ts.size(); ++i) {
        table.rows.push_back({fmt_full(ts[i]),
                              fmt_full(rows[i].leipnik.real()),
                              fmt_full(rows[i].leipnik.imag()),
                              fmt_full(std::abs(rows[i].leipnik)),
                              fmt_full(rows[i].charfn.real()),
                              fmt_full(rows[i].charfn.imag()),
                              fmt_full(std::abs(rows[i].charfn))});
    }
    return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Laplace transform of the lognormal distribution on the cut "
                 "plane, with density inversion for lognormal sums"};
    app.require_subcommand(1);
    app.fallthrough();  // --format/--out may follow the subcommand

    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default: stdout)");

    EvalOptions eval_opt;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one method on a z grid");
    eval_cmd->add_option("--method", eval_opt.method)
        ->required()
        ->check(CLI::IsMember({"direct", "filon", "mb", "series", "asym"}));
    eval_cmd->add_option("--mu", eval_opt.mu);
    eval_cmd->add_option("--sigma", eval_opt.sigma)->required();
    eval_cmd->add_option("--alpha", eval_opt.alpha);
    eval_cmd->add_option("--terms", eval_opt.terms);
    eval_cmd->add_option("--n-poles", eval_opt.n_poles);
    eval_cmd->add_option("--m-terms", eval_opt.m_terms);
    eval_cmd->add_option("--k", eval_opt.contour_k);
    eval_cmd->add_option("--z", eval_opt.z_list, "comma list, e.g. 1,2+0.5i")
        ->required();
    eval_cmd->add_flag("--boundary", eval_opt.boundary,
                       "treat negative real z as upper-limit boundary points");

    int table_id = 0;
    CLI::App* table_cmd = app.add_subcommand("table", "reproduce a reference table");
    table_cmd->add_option("id", table_id, "table id (1-4)")->required();

    DensityOptions density_opt;
    CLI::App* density_cmd =
        app.add_subcommand("density", "density of a sum of lognormals");
    density_cmd->add_option("--components", density_opt.components)->required();
    density_cmd->add_option("--x", density_opt.x_grid, "start:stop:step")
        ->required();
    density_cmd->add_option("--t-max-sqrt", density_opt.t_max_sqrt);
    density_cmd->add_option("--t-step", density_opt.t_step);
    density_cmd->add_option("--method", density_opt.method)
        ->check(CLI::IsMember({"auto", "filon", "mb", "series"}));

    double thorin_mu = 0.0, thorin_sigma = 1.0;
    std::string thorin_t = "1";
    CLI::App* thorin_cmd = app.add_subcommand("thorin", "Thorin measure density");
    thorin_cmd->add_option("--mu", thorin_mu);
    thorin_cmd->add_option("--sigma", thorin_sigma)->required();
    thorin_cmd->add_option("--t", thorin_t, "comma list of t > 0")->required();

    double leipnik_sigma = 1.0, leipnik_k = -1.0;
    std::string leipnik_t = "0.01,0.1,1";
    CLI::App* leipnik_cmd = app.add_subcommand(
        "leipnik-demo",
        "contrast the incorrect contour formula with the characteristic function");
    leipnik_cmd->add_option("--sigma", leipnik_sigma);
    leipnik_cmd->add_option("--k", leipnik_k);
    leipnik_cmd->add_option("--t", leipnik_t);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Table table;
        if (*eval_cmd) {
            table = run_eval(eval_opt);
        } else if (*table_cmd) {
            table = run_table(table_id);
        } else if (*density_cmd) {
            table = run_density(density_opt);
        } else if (*thorin_cmd) {
            table = run_thorin(thorin_mu, thorin_sigma, thorin_t);
        } else {
            table = run_leipnik(leipnik_sigma, leipnik_k, leipnik_t);
        }
        if (!out_path.empty()) {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open " << out_path << "\n";
                return 2;
            }
            emit(table, format, file);
        } else {
            emit(table, format, out);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace lnlaplace::cli
