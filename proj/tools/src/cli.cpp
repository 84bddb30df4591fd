#include "ssdlab/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssdlab/baselines.hpp"

namespace ssdlab::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, sep)) parts.push_back(trim(current));
    return parts;
}

std::optional<double> to_double(const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const ModelSpec& model) {
    json out = json::object();
    for (const auto& p : model.params()) out[p.name] = p.value;
    return out;
}

// CSV cells for the alpha and theta columns; one-parameter models leave alpha empty.
std::pair<std::string, std::string> alpha_theta_cells(const ModelSpec& model) {
    if (model.param_count() == 1) return {"", format_number(model.theta())};
    return {format_number(model.alpha()), format_number(model.theta())};
}

std::string fixed(double v, int digits) {
    if (!std::isfinite(v)) return "-";
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

json dataset_json(const std::string& label, std::size_t n, double mean) {
    return json{{"label", label}, {"n", n}, {"mean", mean}};
}

json report_json(const ModelReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r{{"model", std::string(model_name(row.model))}};
        if (row.fit) {
            r["params"] = params_json(row.fit->model);
            r["neg2LL"] = number_or_null(row.neg2ll);
            r["aic"] = number_or_null(row.aic);
            r["bic"] = number_or_null(row.bic);
            r["aicc"] = number_or_null(row.aicc);
            r["ks"] = number_or_null(row.ks);
            r["pvalue"] = number_or_null(row.pvalue);
            r["converged"] = row.fit->converged;
        } else {
            r["params"] = json::object();
            for (const char* key : {"neg2LL", "aic", "bic", "aicc", "ks", "pvalue"}) r[key] = nullptr;
            r["converged"] = false;
        }
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    json ranking = json::array();
    for (auto kind : report.ranking) ranking.push_back(std::string(model_name(kind)));
    return json{{"dataset", dataset_json(report.dataset_label, report.n, report.mean)},
                {"rows", rows},
                {"ranking", ranking}};
}

void write_report_table(std::ostream& out, const ModelReport& report) {
    out << "Dataset " << report.dataset_label << " (n=" << report.n
        << ", mean=" << fixed(report.mean, 4) << ")\n";
    out << std::left << std::setw(13) << "Distribution" << std::right << std::setw(10) << "alpha"
        << std::setw(10) << "theta" << std::setw(10) << "-2LL" << std::setw(10) << "AIC"
        << std::setw(10) << "BIC" << std::setw(10) << "AICc" << std::setw(9) << "K-S"
        << std::setw(9) << "p-value" << '\n';
    for (const auto& row : report.rows) {
        out << std::left << std::setw(13) << model_name(row.model) << std::right;
        if (!row.fit) {
            out << "  fit failed: " << row.error << '\n';
            continue;
        }
        const auto& m = row.fit->model;
        out << std::setw(10) << (m.param_count() == 2 ? fixed(m.alpha(), 4) : "") << std::setw(10)
            << fixed(m.theta(), 4) << std::setw(10) << fixed(row.neg2ll, 2) << std::setw(10)
            << fixed(row.aic, 2) << std::setw(10) << fixed(row.bic, 2) << std::setw(10)
            << fixed(row.aicc, 2) << std::setw(9) << fixed(row.ks, 4) << std::setw(9)
            << fixed(row.pvalue, 4);
        if (!row.fit->converged) out << "  (not converged)";
        out << '\n';
    }
    out << "Ranking by AIC:";
    for (std::size_t i = 0; i < report.ranking.size(); ++i)
        out << (i ? ", " : " ") << model_name(report.ranking[i]);
    out << '\n';
}

void write_report_csv(std::ostream& out, const ModelReport& report) {
    out << "model,alpha,theta,neg2LL,aic,bic,aicc,ks,pvalue\n";
    for (const auto& row : report.rows) {
        out << model_name(row.model);
        if (!row.fit) {
            out << ",,,,,,,,\n";
            continue;
        }
        const auto [a, t] = alpha_theta_cells(row.fit->model);
        out << ',' << a << ',' << t;
        for (double v : {row.neg2ll, row.aic, row.bic, row.aicc, row.ks, row.pvalue})
            out << ',' << format_number(v);
        out << '\n';
    }
}

// ---- commands ---------------------------------------------------------------

const SsdParams& require_params(const RunConfig& config) {
    if (!config.params) throw ParseError("--params alpha=..,theta=.. is required for this command");
    return *config.params;
}

int run_compare(const RunConfig& config, std::ostream& out) {
    const Dataset data = ingest(resolve_input(config.input_path));
    FitOptions options;
    options.alpha_mode = config.alpha_mode;
    options.alpha_max = config.alpha_max;
    const ModelReport report = compare_models(data, config.models, options);
    write_report(out, report, config.output_format);
    return report.all_ok() ? 0 : 2;
}

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Dataset data = ingest(resolve_input(config.input_path));
    FitOptions options;
    options.alpha_mode = config.alpha_mode;
    options.alpha_max = config.alpha_max;

    struct Outcome {
        ModelKind kind;
        std::optional<FitResult> fit;
        std::string error;
    };
    std::vector<Outcome> outcomes;
    bool failed = false;
    for (auto kind : config.models) {
        Outcome o{kind, std::nullopt, {}};
        try {
            o.fit = fit_model(kind, data, options);
            if (!o.fit->converged) {
                o.error = "did not converge";
                failed = true;
            }
        } catch (const FitError& e) {
            o.error = e.what();
            if (e.last_iterate()) o.fit = e.last_iterate();
            failed = true;
        }
        if (!o.error.empty()) err << model_name(kind) << ": " << o.error << '\n';
        outcomes.push_back(std::move(o));
    }

    switch (config.output_format) {
    case OutputFormat::json: {
        json fits = json::array();
        for (const auto& o : outcomes) {
            json f{{"model", std::string(model_name(o.kind))}};
            if (o.fit) {
                f["params"] = params_json(o.fit->model);
                f["loglik"] = number_or_null(o.fit->loglik);
                f["neg2LL"] = number_or_null(o.fit->neg2ll);
                f["mode"] = std::string(fit_mode_name(o.fit->mode));
                f["iterations"] = o.fit->iterations;
                f["converged"] = o.fit->converged;
                f["gradient_norm"] = number_or_null(o.fit->gradient_norm);
                f["diagnostics"] = o.fit->diagnostics;
            }
            if (!o.error.empty()) f["error"] = o.error;
            fits.push_back(std::move(f));
        }
        out << json{{"dataset", dataset_json(data.label(), data.size(), data.mean())}, {"fits", fits}}.dump(2)
            << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "model,alpha,theta,loglik,neg2LL,mode,iterations,converged,gradient_norm\n";
        for (const auto& o : outcomes) {
            out << model_name(o.kind);
            if (!o.fit) {
                out << ",,,,,,,false,\n";
                continue;
            }
            const auto [a, t] = alpha_theta_cells(o.fit->model);
            out << ',' << a << ',' << t << ',' << format_number(o.fit->loglik) << ','
                << format_number(o.fit->neg2ll) << ',' << fit_mode_name(o.fit->mode) << ','
                << o.fit->iterations << ',' << (o.fit->converged ? "true" : "false") << ','
                << format_number(o.fit->gradient_norm) << '\n';
        }
        break;
    case OutputFormat::table:
        out << "Dataset " << data.label() << " (n=" << data.size() << ", mean=" << fixed(data.mean(), 4)
            << ")\n";
        for (const auto& o : outcomes) {
            out << std::left << std::setw(12) << model_name(o.kind) << std::right;
            if (!o.fit) {
                out << "fit failed: " << o.error << '\n';
                continue;
            }
            for (const auto& p : o.fit->model.params()) out << p.name << '=' << fixed(p.value, 6) << "  ";
            out << "-2LL=" << fixed(o.fit->neg2ll, 4) << "  " << fit_mode_name(o.fit->mode) << ", "
                << o.fit->iterations << " iterations, "
                << (o.fit->converged ? "converged" : "NOT converged") << ", |score|="
                << format_number(o.fit->gradient_norm) << '\n';
        }
        break;
    }
    return failed ? 2 : 0;
}

int run_curves(const RunConfig& config, std::ostream& out) {
    const SsdParams& params = require_params(config);
    const Grid& g = config.grid;
    std::vector<std::array<double, 6>> rows;
    for (int i = 0; i < g.points; ++i) {
        const double x = i == g.points - 1 ? g.x_max : g.x_min + (g.x_max - g.x_min) * i / (g.points - 1);
        const double h = x > 0 ? ssd::hazard(x, params) : 0.0;  // f(0) = 0 for every α ≥ 0
        rows.push_back({x, ssd::pdf(x, params), ssd::cdf(x, params), h, ssd::survival(x, params),
                        ssd::mean_residual_life(x, params)});
    }
    std::vector<std::array<double, 3>> income;
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        income.push_back({p, ssd::lorenz(p, params), ssd::bonferroni(p, params)});
    }

    if (config.output_format == OutputFormat::json) {
        json curve = json::array();
        for (const auto& r : rows)
            curve.push_back({{"x", r[0]}, {"pdf", r[1]}, {"cdf", r[2]}, {"hazard", r[3]},
                             {"survival", r[4]}, {"mrl", number_or_null(r[5])}});
        json lorenz = json::array();
        for (const auto& r : income) lorenz.push_back({{"p", r[0]}, {"lorenz", r[1]}, {"bonferroni", r[2]}});
        out << json{{"params", {{"alpha", params.alpha()}, {"theta", params.theta()}}},
                    {"curve", curve},
                    {"lorenz", lorenz}}
                   .dump(2)
            << '\n';
        return 0;
    }
    // csv and table share the plot-data layout: two blocks separated by a blank line
    out << "x,pdf,cdf,hazard,survival,mrl\n";
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << format_number(r[j]);
        out << '\n';
    }
    out << "\np,lorenz,bonferroni\n";
    for (const auto& r : income)
        out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2]) << '\n';
    return 0;
}

int run_ttt(const RunConfig& config, std::ostream& out) {
    const Dataset data = ingest(resolve_input(config.input_path));
    const CurveSeries curve = empirical_ttt(data);
    std::vector<double> theoretical;
    if (config.params)
        for (const auto& pt : curve.points) theoretical.push_back(ssd::ttt_transform(pt.x, *config.params));

    if (config.output_format == OutputFormat::json) {
        json points = json::array();
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            json p{{"u", curve.points[i].x}, {"phi", curve.points[i].y}};
            if (!theoretical.empty()) p["ssd"] = theoretical[i];
            points.push_back(std::move(p));
        }
        out << json{{"dataset", dataset_json(data.label(), data.size(), data.mean())}, {"ttt", points}}.dump(2)
            << '\n';
        return 0;
    }
    out << "u,phi" << (theoretical.empty() ? "" : ",ssd") << '\n';
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        out << format_number(curve.points[i].x) << ',' << format_number(curve.points[i].y);
        if (!theoretical.empty()) out << ',' << format_number(theoretical[i]);
        out << '\n';
    }
    return 0;
}

int run_sample(const RunConfig& config, std::ostream& out) {
    const SsdParams& params = require_params(config);
    if (config.sample_size == 0) throw ParseError("--n must be at least 1");
    std::mt19937_64 rng(config.seed);
    const auto draws = ssd::sample_values(config.sample_size, params, rng);
    out << "# ssd sample alpha=" << format_number(params.alpha()) << " theta=" << format_number(params.theta())
        << " seed=" << config.seed << " n=" << config.sample_size << '\n';
    for (double v : draws) out << format_number(v) << '\n';
    return 0;
}

int run_entropy(const RunConfig& config, std::ostream& out) {
    const SsdParams& params = require_params(config);
    const double h = ssd::renyi_entropy(config.order, params);
    switch (config.output_format) {
    case OutputFormat::json:
        out << json{{"alpha", params.alpha()}, {"theta", params.theta()}, {"order", config.order},
                    {"renyi_entropy", h}}
                   .dump(2)
            << '\n';
        break;
    case OutputFormat::csv:
        out << "alpha,theta,order,renyi_entropy\n"
            << format_number(params.alpha()) << ',' << format_number(params.theta()) << ','
            << format_number(config.order) << ',' << format_number(h) << '\n';
        break;
    case OutputFormat::table:
        out << "Renyi entropy of order " << format_number(config.order) << " at alpha="
            << format_number(params.alpha()) << ", theta=" << format_number(params.theta()) << ": "
            << format_number(h) << '\n';
        break;
    }
    return 0;
}

}  // namespace

Dataset parse_dataset(std::istream& in, std::string label, const std::string& source) {
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            const auto v = to_double(token);
            if (!v) throw ParseError(source + ":" + std::to_string(line_no) + ": not a number: '" + token + "'", line_no);
            if (!(*v > 0.0) || !std::isfinite(*v))
                throw ParseError(source + ":" + std::to_string(line_no) + ": value must be positive and finite: '" +
                                     token + "'",
                                 line_no);
            values.push_back(*v);
            token.clear();
        };
        for (char c : content) {
            if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';')
                flush();
            else
                token.push_back(c);
        }
        flush();
    }
    if (values.empty()) throw ParseError(source + ": no observations");
    return Dataset(std::move(values), std::move(label));
}

Dataset ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse_dataset(in, path.stem().string(), path.string());
}

std::filesystem::path resolve_input(const std::string& path) {
    if (path.empty()) throw ParseError("--input is required for this command");
    std::filesystem::path p(path);
    if (std::filesystem::exists(p) || p.is_absolute()) return p;
    if (const char* dir = std::getenv("SSDLAB_FIXTURES"); dir && *dir) {
        auto candidate = std::filesystem::path(dir) / p;
        if (std::filesystem::exists(candidate)) return candidate;
    }
    return p;
}

Grid parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ParseError("--grid expects min:max:points, got '" + text + "'");
    const auto lo = to_double(parts[0]);
    const auto hi = to_double(parts[1]);
    int points = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), points);
    if (!lo || !hi || ec != std::errc() || ptr != parts[2].data() + parts[2].size())
        throw ParseError("--grid expects numbers, got '" + text + "'");
    if (points < 2) throw ParseError("--grid needs at least 2 points");
    if (!(*lo < *hi)) throw ParseError("--grid needs min < max");
    if (*lo < 0) throw ParseError("--grid min must be >= 0");
    return Grid{*lo, *hi, points};
}

SsdParams parse_params(const std::string& text) {
    std::optional<double> alpha;
    std::optional<double> theta;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("--params expects name=value pairs, got '" + item + "'");
        const std::string key = trim(item.substr(0, eq));
        const auto value = to_double(trim(item.substr(eq + 1)));
        if (!value) throw ParseError("--params: '" + item + "' is not numeric");
        if (key == "alpha")
            alpha = value;
        else if (key == "theta")
            theta = value;
        else
            throw ParseError("--params: unknown parameter '" + key + "'");
    }
    if (!alpha || !theta) throw ParseError("--params needs both alpha and theta");
    try {
        return SsdParams(*alpha, *theta);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("--params: ") + e.what());
    }
}

std::vector<ModelKind> parse_models(const std::string& text) {
    std::vector<ModelKind> models;
    for (const auto& name : split(text, ',')) {
        if (name.empty()) continue;
        try {
            models.push_back(parse_model_name(name));
        } catch (const std::invalid_argument&) {
            throw ParseError("unknown model '" + name + "'");
        }
    }
    if (models.empty()) throw ParseError("--models is empty");
    return models;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_report(std::ostream& out, const ModelReport& report, OutputFormat format) {
    switch (format) {
    case OutputFormat::json: out << report_json(report).dump(2) << '\n'; break;
    case OutputFormat::csv: write_report_csv(out, report); break;
    case OutputFormat::table: write_report_table(out, report); break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
        file.open(config.output_path);
        if (!file) {
            err << "error: cannot write " << config.output_path << '\n';
            return 1;
        }
        sink = &file;
    }
    try {
        switch (config.command) {
        case Command::fit: return run_fit(config, *sink, err);
        case Command::compare: return run_compare(config, *sink);
        case Command::curves: return run_curves(config, *sink);
        case Command::ttt: return run_ttt(config, *sink);
        case Command::sample: return run_sample(config, *sink);
        case Command::entropy: return run_entropy(config, *sink);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fit and compare lifetime distributions built around the SSD gamma mixture"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "table";
    std::string models;
    std::string alpha_mode = "continuous";
    std::string grid;
    std::string params;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", config.output_path, "Write to this file instead of stdout");
        cmd->add_option("-f,--format", format, "table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
    };
    auto add_fitting = [&](CLI::App* cmd) {
        cmd->add_option("-i,--input", config.input_path, "Observations file")->required();
        cmd->add_option("--models", models, "Comma-separated model names");
        cmd->add_option("--alpha-mode", alpha_mode, "profile or continuous")
            ->check(CLI::IsMember({"profile", "continuous"}));
        cmd->add_option("--alpha-max", config.alpha_max, "Largest alpha in the integer profile")
            ->check(CLI::NonNegativeNumber);
    };

    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit with iteration diagnostics");
    add_fitting(fit);
    add_output(fit);
    auto* compare = app.add_subcommand("compare", "Fit all models and rank by AIC");
    add_fitting(compare);
    add_output(compare);
    auto* curves = app.add_subcommand("curves", "pdf, cdf, hazard, survival, MRL and Lorenz curves");
    curves->add_option("--params", params, "alpha=..,theta=..")->required();
    curves->add_option("--grid", grid, "min:max:points");
    add_output(curves);
    auto* ttt = app.add_subcommand("ttt", "Empirical scaled total-time-on-test plot data");
    ttt->add_option("-i,--input", config.input_path, "Observations file")->required();
    ttt->add_option("--params", params, "Overlay the SSD transform at alpha=..,theta=..");
    add_output(ttt);
    auto* sample = app.add_subcommand("sample", "Draw an SSD sample");
    sample->add_option("--params", params, "alpha=..,theta=..")->required();
    sample->add_option("-n,--n", config.sample_size, "Sample size")->check(CLI::PositiveNumber);
    sample->add_option("--seed", config.seed, "Generator seed");
    add_output(sample);
    auto* entropy = app.add_subcommand("entropy", "Renyi entropy");
    entropy->add_option("--params", params, "alpha=..,theta=..")->required();
    entropy->add_option("--order", config.order, "Entropy order gamma > 0, gamma != 1");
    add_output(entropy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (fit->parsed()) config.command = Command::fit;
        if (compare->parsed()) config.command = Command::compare;
        if (curves->parsed()) config.command = Command::curves;
        if (ttt->parsed()) config.command = Command::ttt;
        if (sample->parsed()) config.command = Command::sample;
        if (entropy->parsed()) config.command = Command::entropy;

        config.output_format = format == "json" ? OutputFormat::json
                               : format == "csv" ? OutputFormat::csv
                                                 : OutputFormat::table;
        if (!models.empty())
            config.models = parse_models(models);
        else if (config.command == Command::fit)
            config.models = {ModelKind::ssd};
        config.alpha_mode = alpha_mode == "profile" ? AlphaMode::profile : AlphaMode::continuous;
        if (!grid.empty()) config.grid = parse_grid(grid);
        if (!params.empty()) config.params = parse_params(params);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return run(config, out, err);
}

}  // namespace ssdlab::cli
