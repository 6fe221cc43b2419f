#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <macrorisk/macrorisk.hpp>

namespace mr = macrorisk;

namespace {

std::string error_name(const mr::Error& e) {
    if (dynamic_cast<const mr::BadPeriodFormat*>(&e)) return "BadPeriodFormat";
    if (dynamic_cast<const mr::NonConsecutivePeriods*>(&e))
        return "NonConsecutivePeriods";
    if (dynamic_cast<const mr::NonNumericCell*>(&e)) return "NonNumericCell";
    if (dynamic_cast<const mr::DuplicateColumn*>(&e)) return "DuplicateColumn";
    if (dynamic_cast<const mr::EmptyFile*>(&e)) return "EmptyFile";
    if (dynamic_cast<const mr::RowWidthMismatch*>(&e)) return "RowWidthMismatch";
    if (dynamic_cast<const mr::SeriesTooShort*>(&e)) return "SeriesTooShort";
    if (dynamic_cast<const mr::NonPositiveValue*>(&e)) return "NonPositiveValue";
    if (dynamic_cast<const mr::NonFiniteValue*>(&e)) return "NonFiniteValue";
    if (dynamic_cast<const mr::RankDeficient*>(&e)) return "RankDeficient";
    if (dynamic_cast<const mr::InsufficientObservations*>(&e))
        return "InsufficientObservations";
    if (dynamic_cast<const mr::MissingRegressor*>(&e)) return "MissingRegressor";
    if (dynamic_cast<const mr::DegenerateFit*>(&e)) return "DegenerateFit";
    if (dynamic_cast<const mr::DegenerateResiduals*>(&e))
        return "DegenerateResiduals";
    if (dynamic_cast<const mr::MissingColumn*>(&e)) return "MissingColumn";
    if (dynamic_cast<const mr::OrderExceeded*>(&e)) return "OrderExceeded";
    if (dynamic_cast<const mr::ConfigError*>(&e)) return "ConfigError";
    return "Error";
}

std::string g9(double v) { return mr::format_g9(v); }

void print_fit(std::ostream& os, const mr::OlsFit& f) {
    os << "dependent: " << f.dependent << "\n";
    os << "name            coef            std_err         t_stat          p\n";
    for (std::size_t i = 0; i < f.names.size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-15s %-15s %-15s %-15s %s",
                      f.names[i].c_str(), g9(f.beta[i]).c_str(),
                      g9(f.std_errors[i]).c_str(), g9(f.t_stats[i]).c_str(),
                      g9(f.p_values[i]).c_str());
        os << buf << "\n";
    }
    os << "r_squared " << g9(f.r_squared) << "  adj_r_squared "
       << g9(f.adj_r_squared) << "  n " << f.n_obs << "  dof " << f.dof
       << "  durbin_watson " << g9(f.dw) << "\n";
}

void print_outcome(std::ostream& os, const mr::AdfOutcome& o, double alpha) {
    os << "model " << mr::to_string(o.model) << "  lags " << o.lags
       << "  effective_n " << o.effective_n << "\n";
    os << "rho_hat " << g9(o.rho_hat) << "  adf_stat " << g9(o.adf_stat)
       << "\n";
    os << "critical values: 1% " << g9(o.critical_values.at(1)) << "  5% "
       << g9(o.critical_values.at(5)) << "  10% "
       << g9(o.critical_values.at(10)) << "\n";
    for (const auto& [term, rec] : o.terms)
        os << "term " << term << ": coef " << g9(rec.coefficient) << "  t "
           << g9(rec.t_stat) << "  p " << g9(rec.p_value) << "\n";
    for (const auto& d : o.descent)
        os << "dropped " << d.term << " (model " << mr::to_string(d.model)
           << ", p " << g9(d.p_value) << ")\n";
    os << "decision at alpha " << g9(alpha) << ": "
       << mr::to_string(o.decision) << "\n";
}

mr::DesignMatrix build_design(const mr::Dataset& data,
                              const std::vector<std::string>& regressors) {
    mr::DesignMatrix X;
    X.add_intercept(data.periods.size());
    for (const auto& r : regressors) X.add(r, data.column(r));
    return X;
}

std::vector<std::string> upper_list(const std::string& csv) {
    return mr::detail::split_list(csv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series econometrics toolkit"};
    app.require_subcommand(1);

    std::string data_path, series_name, model_str = "auto", lags_str = "0";
    std::string dep, regressors_csv, direction_str = "backward";
    std::string config_path, format_str = "text", out_path;
    double alpha = 0.05;

    auto* adf = app.add_subcommand("adf", "sequential or single-model ADF test");
    adf->add_option("--data", data_path, "input csv")->required();
    adf->add_option("--series", series_name, "column to test")->required();
    adf->add_option("--model", model_str, "auto|none|const|trend")
        ->check(CLI::IsMember({"auto", "none", "const", "trend"}));
    adf->add_option("--lags", lags_str, "lag count or 'auto'");
    adf->add_option("--alpha", alpha, "significance level");

    auto* fitcmd = app.add_subcommand("fit", "OLS with intercept");
    fitcmd->add_option("--data", data_path, "input csv")->required();
    fitcmd->add_option("--dep", dep, "dependent column")->required();
    fitcmd->add_option("--regressors", regressors_csv, "comma-separated columns")
        ->required();

    auto* step = app.add_subcommand("stepwise", "stepwise specification search");
    step->add_option("--data", data_path, "input csv")->required();
    step->add_option("--dep", dep, "dependent column")->required();
    step->add_option("--regressors", regressors_csv, "comma-separated columns")
        ->required();
    step->add_option("--direction", direction_str, "backward|forward")
        ->check(CLI::IsMember({"backward", "forward"}));
    step->add_option("--alpha", alpha, "significance level");

    auto* diag = app.add_subcommand("diagnose", "residual diagnostics battery");
    diag->add_option("--data", data_path, "input csv")->required();
    diag->add_option("--dep", dep, "dependent column")->required();
    diag->add_option("--regressors", regressors_csv, "comma-separated columns")
        ->required();
    diag->add_option("--alpha", alpha, "significance level");

    auto* desc = app.add_subcommand("describe", "descriptive statistics");
    desc->add_option("--data", data_path, "input csv")->required();
    desc->add_option("--series", series_name, "column to describe")->required();

    auto* pipe = app.add_subcommand("pipeline", "full modeling pipeline");
    pipe->add_option("--data", data_path, "input csv")->required();
    pipe->add_option("--config", config_path, "pipeline config")->required();
    pipe->add_option("--format", format_str, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    pipe->add_option("--out", out_path, "write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return 1;
    }

    try {
        if (*adf) {
            if (!(alpha > 0.0 && alpha < 1.0))
                throw mr::ConfigError("alpha outside (0, 1)");
            const mr::Dataset data = mr::load_csv(data_path);
            const mr::Series s = data.series(mr::detail::to_upper(series_name));
            mr::LagSpec lags = mr::LagSpec::fixed_lags(0);
            if (lags_str == "auto") {
                lags = mr::LagSpec::auto_lags();
            } else if (!lags_str.empty() &&
                       lags_str.find_first_not_of("0123456789") ==
                           std::string::npos) {
                lags = mr::LagSpec::fixed_lags((std::size_t)std::stoul(lags_str));
            } else {
                std::cerr << "usage error: --lags wants a non-negative "
                             "integer or 'auto'\n";
                return 1;
            }
            if (model_str == "auto") {
                const mr::IntegrationReport rep =
                    mr::sequential_adf(s, alpha, lags, 2);
                std::cout << "series: " << s.name << "\n"
                          << "order: " << rep.order << "\n";
                for (std::size_t k = 0; k < rep.trace.size(); ++k) {
                    std::cout << "-- stage " << k << " --\n";
                    print_outcome(std::cout, rep.trace[k], alpha);
                }
            } else {
                const mr::AdfModel model =
                    model_str == "none"    ? mr::AdfModel::None
                    : model_str == "const" ? mr::AdfModel::ConstantOnly
                                           : mr::AdfModel::ConstantAndTrend;
                const std::size_t nlags = lags.automatic
                                              ? mr::choose_lags(s.values, model)
                                              : lags.fixed;
                mr::AdfOutcome out = mr::adf_regression(s.values, model, nlags);
                for (int lv : {1, 5, 10})
                    out.critical_values[lv] =
                        mr::adf_critical_value(model, out.effective_n, lv);
                out.decision = mr::classify(
                    out.adf_stat,
                    out.critical_values.at(mr::level_from_alpha(alpha)));
                std::cout << "series: " << s.name << "\n";
                print_outcome(std::cout, out, alpha);
            }
        } else if (*fitcmd) {
            const mr::Dataset data = mr::load_csv(data_path);
            const std::string d = mr::detail::to_upper(dep);
            const mr::OlsFit f =
                mr::fit(d, data.column(d),
                        build_design(data, upper_list(regressors_csv)));
            print_fit(std::cout, f);
        } else if (*step) {
            if (!(alpha > 0.0 && alpha < 1.0))
                throw mr::ConfigError("alpha outside (0, 1)");
            const mr::Dataset data = mr::load_csv(data_path);
            const std::string d = mr::detail::to_upper(dep);
            const auto X = build_design(data, upper_list(regressors_csv));
            const mr::SpecLadder ladder =
                direction_str == "backward"
                    ? mr::backward_eliminate(d, data.column(d), X, alpha)
                    : mr::forward_select(d, data.column(d), X, alpha);
            std::cout << "direction: " << mr::to_string(ladder.direction)
                      << "  alpha: " << g9(ladder.alpha) << "\n";
            for (std::size_t k = 0; k < ladder.steps.size(); ++k) {
                const auto& st = ladder.steps[k];
                std::cout << "== step " << k + 1 << ": ";
                if (st.removed)
                    std::cout << "removed " << *st.removed << " (p "
                              << g9(*st.removal_p_value) << ")";
                else if (st.entered)
                    std::cout << "entered " << *st.entered << " (p "
                              << g9(*st.entry_p_value) << ")";
                else
                    std::cout << (k + 1 == ladder.steps.size() ? "final"
                                                               : "baseline");
                std::cout << " ==\n";
                print_fit(std::cout, st.fit);
            }
        } else if (*diag) {
            if (!(alpha > 0.0 && alpha < 1.0))
                throw mr::ConfigError("alpha outside (0, 1)");
            const mr::Dataset data = mr::load_csv(data_path);
            const std::string d = mr::detail::to_upper(dep);
            const auto X = build_design(data, upper_list(regressors_csv));
            const mr::OlsFit f = mr::fit(d, data.column(d), X);
            print_fit(std::cout, f);
            const mr::DwResult dw = mr::durbin_watson(f.residuals);
            std::cout << "durbin_watson " << g9(dw.statistic) << "  band ["
                      << g9(dw.band.low) << ", " << g9(dw.band.high)
                      << "]  -> " << mr::to_string(dw.verdict) << "\n";
            const mr::WhiteResult w = mr::white_test(f, X, alpha);
            std::cout << "white obs_r_squared " << g9(w.obs_r_squared)
                      << "  chi2(" << w.df << ") p " << g9(w.p_value) << "  F "
                      << g9(w.f_statistic) << " (p " << g9(w.f_p_value)
                      << ")  -> " << w.verdict() << "\n";
            const mr::JbResult jb = mr::jarque_bera(f.residuals, alpha);
            std::cout << "jarque_bera S " << g9(jb.skewness) << "  K "
                      << g9(jb.kurtosis) << "  JB " << g9(jb.jb_stat) << "  p "
                      << g9(jb.p_value) << "  -> " << jb.verdict() << "\n";
        } else if (*desc) {
            const mr::Dataset data = mr::load_csv(data_path);
            const mr::Series s = data.series(mr::detail::to_upper(series_name));
            const mr::Summary sum = mr::describe(s);
            std::cout << "series: " << s.name << "\n"
                      << "n " << sum.n << "\nmean " << g9(sum.mean)
                      << "\nmedian " << g9(sum.median) << "\nmin "
                      << g9(sum.min) << "\nmax " << g9(sum.max) << "\nstd_dev "
                      << g9(sum.std_dev) << "\n";
        } else if (*pipe) {
            const mr::Dataset data = mr::load_csv(data_path);
            const mr::PipelineConfig cfg = mr::load_config(config_path);
            const mr::PipelineReport report = mr::run_pipeline(data, cfg);
            const std::string doc = format_str == "structured"
                                        ? mr::render_structured(report)
                                        : mr::render_text(report);
            if (out_path.empty()) {
                std::cout << doc;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw mr::Error("cannot open --out " + out_path);
                out << doc;
            }
        }
    } catch (const mr::Error& e) {
        std::cerr << "error: " << error_name(e) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
