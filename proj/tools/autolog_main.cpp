// autolog: rare-event prediction from coevolving sensor series with weighted
// autologistic regression.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 training divergence.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autolog/csv_io.hpp"
#include "autolog/pipeline.hpp"

namespace {

using namespace autolog;

struct DataArgs {
    std::string sensors_path;
    std::string failures_path;
    std::string fill = "error";

    FillPolicy fill_policy() const {
        if (fill == "error") return FillPolicy::Error;
        if (fill == "forward") return FillPolicy::Forward;
        throw DataError("unknown fill policy '" + fill + "'");
    }
};

void add_data_flags(CLI::App* cmd, DataArgs& args, bool need_failures = true) {
    cmd->add_option("--sensors", args.sensors_path, "sensor CSV (timestamp,<name>,...)")
        ->required();
    if (need_failures) {
        cmd->add_option("--failures", args.failures_path, "failure CSV (start,end)")->required();
    }
    cmd->add_option("--fill", args.fill, "missing-cell policy: error|forward")
        ->check(CLI::IsMember({"error", "forward"}));
}

std::int64_t resolve_delta_t(std::int64_t steps, double days, std::int64_t granularity_minutes) {
    if (days > 0.0) {
        const double s = days * 24.0 * 60.0 / static_cast<double>(granularity_minutes);
        const auto rounded = static_cast<std::int64_t>(std::llround(s));
        if (rounded < 1) throw DataError("--delta-t-days resolves to less than one step");
        return rounded;
    }
    return steps;
}

std::vector<std::int64_t> parse_candidates(const std::string& text) {
    std::vector<std::int64_t> out;
    const auto range_pos = text.find("..");
    try {
        if (range_pos != std::string::npos) {
            const std::int64_t lo = std::stoll(text.substr(0, range_pos));
            const std::int64_t hi = std::stoll(text.substr(range_pos + 2));
            for (std::int64_t q = lo; q <= hi; ++q) out.push_back(q);
        } else {
            std::size_t pos = 0;
            while (pos < text.size()) {
                const auto comma = text.find(',', pos);
                const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                    : comma - pos);
                out.push_back(std::stoll(tok));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
    } catch (const std::exception&) {
        throw DataError("cannot parse candidate list '" + text + "' (use 'a..b' or 'a,b,c')");
    }
    if (out.empty()) throw DataError("empty candidate list");
    return out;
}

std::vector<double> parse_thresholds(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    try {
        while (pos < text.size()) {
            const auto comma = text.find(',', pos);
            out.push_back(std::stod(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } catch (const std::exception&) {
        throw DataError("cannot parse threshold list '" + text + "'");
    }
    if (out.empty()) throw DataError("empty threshold list");
    return out;
}

EvalSlice parse_slice(const std::string& name) {
    if (name == "train") return EvalSlice::Train;
    if (name == "test") return EvalSlice::Test;
    if (name == "all") return EvalSlice::All;
    throw DataError("unknown slice '" + name + "'");
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    SynthConfig config;
    std::string out_dir;
};

int run_synth(const SynthArgs& args) {
    const SynthData data = generate(args.config);
    std::filesystem::create_directories(args.out_dir);
    const std::string sensors_path = args.out_dir + "/sensors.csv";
    const std::string failures_path = args.out_dir + "/failures.csv";
    write_sensors_csv(sensors_path, data.sensors);
    write_failures_csv(failures_path, data.failures);
    std::cout << "wrote " << sensors_path << " (" << data.sensors.front().values.size()
              << " steps, " << data.sensors.size() << " sensors)\n";
    std::cout << "wrote " << failures_path << " (" << data.failures.count() << " episodes)\n";
    return 0;
}

struct TrainArgs {
    DataArgs data;
    std::int64_t delta_t = 30;
    double delta_t_days = 0.0;
    std::int64_t q = 20;
    std::string weighting = "adaptive";
    PipelineOptions options;
    std::string model_out;
};

int run_train(TrainArgs& args) {
    const auto sensors = load_sensors(args.data.sensors_path, args.data.fill_policy());
    const auto failures = load_failures(args.data.failures_path, sensors.front().start_epoch_seconds,
                                        sensors.front().granularity_minutes);
    args.options.delta_t_steps =
        resolve_delta_t(args.delta_t, args.delta_t_days, sensors.front().granularity_minutes);
    args.options.q_steps = args.q;
    args.options.train.weighting = weighting_mode_from_name(args.weighting);

    const TrainOutcome outcome = train_pipeline(sensors, failures, args.options);
    save_model(args.model_out, outcome.bundle);

    std::cout << "trained on " << outcome.split.train.step_count << " steps ("
              << outcome.split.train_failure_count << " failures), test half holds "
              << outcome.split.test_failure_count << " failures\n";
    std::cout << "epochs: " << outcome.fit.epochs_run
              << (outcome.fit.converged ? " (converged)" : " (hit max)") << "\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "final weights: w0=%.6g w1=%.6g", outcome.fit.final_weights.w0,
                  outcome.fit.final_weights.w1);
    std::cout << buf << "\n";
    std::snprintf(buf, sizeof(buf), "final objective: %.6g",
                  outcome.fit.objective_trace.empty() ? 0.0 : outcome.fit.objective_trace.back());
    std::cout << buf << "\n";
    std::cout << "model written to " << args.model_out << "\n";
    return 0;
}

struct ModelDataArgs {
    DataArgs data;
    std::string model_path;
    std::string slice = "test";
};

int run_predict(const ModelDataArgs& args, const std::string& trace_out) {
    const ModelBundle bundle = load_model(args.model_path);
    const auto sensors = load_sensors(args.data.sensors_path, args.data.fill_policy());
    const auto failures = load_failures(args.data.failures_path, sensors.front().start_epoch_seconds,
                                        sensors.front().granularity_minutes);
    const PredictionTrace trace =
        predict_pipeline(bundle, sensors, failures, parse_slice(args.slice));
    write_trace_csv(trace_out, trace);
    std::cout << "wrote " << trace.raw_probs.size() << " rows to " << trace_out << " ("
              << trace.alarm_episodes.size() << " alarm episodes)\n";
    return 0;
}

int run_evaluate(const ModelDataArgs& args, const std::string& report_out) {
    const ModelBundle bundle = load_model(args.model_path);
    const auto sensors = load_sensors(args.data.sensors_path, args.data.fill_policy());
    const auto failures = load_failures(args.data.failures_path, sensors.front().start_epoch_seconds,
                                        sensors.front().granularity_minutes);
    const EvalOutcome outcome =
        evaluate_pipeline(bundle, sensors, failures, parse_slice(args.slice));

    const std::string report = format_metrics_report(
        outcome.metrics,
        {{"slice", args.slice}, {"rows", std::to_string(outcome.targets.size())}});
    if (!report_out.empty()) write_text_file(report_out, report);
    std::cout << report;
    return 0;
}

struct SelectQArgs {
    DataArgs data;
    std::int64_t delta_t = 30;
    double delta_t_days = 0.0;
    std::string candidates = "0..30";
    std::string weighting = "adaptive";
    PipelineOptions options;
    double val_fraction = 0.8;
    std::string report_out;
};

int run_select_q(SelectQArgs& args) {
    const auto sensors = load_sensors(args.data.sensors_path, args.data.fill_policy());
    const auto failures = load_failures(args.data.failures_path, sensors.front().start_epoch_seconds,
                                        sensors.front().granularity_minutes);
    const std::int64_t delta_t =
        resolve_delta_t(args.delta_t, args.delta_t_days, sensors.front().granularity_minutes);
    args.options.train.weighting = weighting_mode_from_name(args.weighting);

    AlignedDataset dataset = align_and_label(sensors, failures, delta_t);
    if (args.options.add_gc) dataset = augment_g_c(dataset, failures);

    // q is selected on a validation slice carved out of the training half, so
    // the held-out test episodes never influence the choice.
    const EvalSplit outer = split_by_failures(dataset, failures, args.options.train_fraction);
    const EvalSplit inner =
        split_by_failures(outer.train, outer.train_failures, args.val_fraction);

    const FFFSResult result =
        select_q_fffs(inner.train, inner.test, parse_candidates(args.candidates),
                      args.options.train, args.options.smoothing, args.options.decision);

    std::ostringstream out;
    out << "chosen_q: " << result.chosen_q << "\n";
    char buf[64];
    for (const auto& score : result.candidate_scores) {
        std::snprintf(buf, sizeof(buf), "q %lld: f1 %.6g", static_cast<long long>(score.q),
                      score.f1);
        out << buf << "\n";
    }
    if (!args.report_out.empty()) write_text_file(args.report_out, out.str());
    std::cout << out.str();
    return 0;
}

int run_sweep(const ModelDataArgs& args, const std::string& thresholds_text,
              const std::string& report_out) {
    const ModelBundle bundle = load_model(args.model_path);
    const auto sensors = load_sensors(args.data.sensors_path, args.data.fill_policy());
    const auto failures = load_failures(args.data.failures_path, sensors.front().start_epoch_seconds,
                                        sensors.front().granularity_minutes);
    const EvalOutcome base = evaluate_pipeline(bundle, sensors, failures, parse_slice(args.slice));

    const auto swept =
        sweep_threshold(base.trace.smoothed_probs, base.targets, parse_thresholds(thresholds_text));

    std::ostringstream out;
    out << "threshold accuracy recall specificity precision f1 false_alarms\n";
    char buf[160];
    for (const auto& [thr, m] : swept) {
        std::snprintf(buf, sizeof(buf), "%.6g %.6g %.6g %.6g %.6g %.6g %lld", thr, m.accuracy,
                      m.recall, m.specificity, m.precision, m.f1,
                      static_cast<long long>(m.false_alarms));
        out << buf << "\n";
    }
    if (!report_out.empty()) write_text_file(report_out, out.str());
    std::cout << out.str();
    return 0;
}

int run_correlate(const DataArgs& data, double threshold, const std::string& matrix_out) {
    const auto sensors = load_sensors(data.sensors_path, data.fill_policy());
    const AlignedDataset dataset = align_and_label(sensors, FailureLog{}, 1);
    const CorrelationReport report = correlation_screen(dataset, threshold);

    char buf[160];
    std::cout << "sensors: " << report.d << "\n";
    std::cout << "flagged pairs (|r| >= " << threshold << "): " << report.flagged_pairs.size()
              << "\n";
    for (const auto& p : report.flagged_pairs) {
        std::snprintf(buf, sizeof(buf), "  %s ~ %s: r = %.6g",
                      dataset.sensor_names[p.i].c_str(), dataset.sensor_names[p.j].c_str(), p.r);
        std::cout << buf << "\n";
    }
    for (const auto& p : report.degenerate_pairs) {
        std::cout << "  " << dataset.sensor_names[p.i] << " ~ " << dataset.sensor_names[p.j]
                  << ": degenerate (zero variance)\n";
    }
    if (!matrix_out.empty()) {
        std::ostringstream out;
        for (std::int64_t i = 0; i < report.d; ++i) {
            for (std::int64_t j = 0; j < report.d; ++j) {
                std::snprintf(buf, sizeof(buf), "%.6g", report.at(i, j));
                out << (j ? "," : "") << buf;
            }
            out << "\n";
        }
        write_text_file(matrix_out, out.str());
        std::cout << "matrix written to " << matrix_out << "\n";
    }
    return 0;
}

void add_train_config_flags(CLI::App* cmd, PipelineOptions& options, std::string& weighting) {
    cmd->add_option("--weighting", weighting, "class weighting: none|simple|adaptive")
        ->check(CLI::IsMember({"none", "simple", "adaptive"}));
    cmd->add_option("--lr", options.train.learning_rate, "gradient ascent learning rate");
    cmd->add_option("--max-epochs", options.train.max_epochs, "epoch limit");
    cmd->add_option("--tolerance", options.train.tolerance, "relative objective tolerance");
    cmd->add_option("--adaptive-every", options.train.adaptive_update_every,
                    "epochs between adaptive weight updates");
    cmd->add_option("--weight-cap", options.train.weight_cap, "upper bound on either class weight");
    cmd->add_option("--seed", options.train.seed, "recorded training seed");
    cmd->add_option("--smooth-l", options.smoothing.window, "trailing probabilities averaged");
    cmd->add_option("--threshold", options.decision.threshold, "decision threshold on smoothed p");
    cmd->add_option("--train-frac", options.train_fraction, "fraction of failures used for training");
    cmd->add_flag("--add-gc", options.add_gc,
                  "append elapsed-functioning-time and failure-count columns");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rare-event prediction from coevolving sensor time series"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
    synth_cmd->add_option("--seed", synth_args.config.seed, "generator seed");
    synth_cmd->add_option("--duration", synth_args.config.duration_steps, "steps to generate");
    synth_cmd->add_option("--failures", synth_args.config.failure_count, "failure episodes");
    synth_cmd->add_option("--sensor-count", synth_args.config.sensor_count, "sensor channels");
    synth_cmd->add_option("--failure-duration", synth_args.config.failure_duration_steps,
                          "steps per failure episode");
    synth_cmd->add_option("--precursor-window", synth_args.config.precursor_window_steps,
                          "ramp length before each failure");
    synth_cmd->add_option("--precursor-strength", synth_args.config.precursor_strength,
                          "ramp peak in noise standard deviations");
    synth_cmd->add_option("--noise-std", synth_args.config.noise_std, "sensor noise scale");
    synth_cmd->add_option("--ar-coefficient", synth_args.config.ar_coefficient,
                          "baseline AR(1) coefficient in [0,1)");
    synth_cmd->add_option("--out-dir", synth_args.out_dir, "output directory")->required();

    TrainArgs train_args;
    CLI::App* train_cmd = app.add_subcommand("train", "fit a model and save it");
    add_data_flags(train_cmd, train_args.data);
    train_cmd->add_option("--delta-t", train_args.delta_t, "prediction horizon in steps");
    train_cmd->add_option("--delta-t-days", train_args.delta_t_days,
                          "prediction horizon in days (overrides --delta-t)");
    train_cmd->add_option("--q", train_args.q, "memory depth in steps");
    add_train_config_flags(train_cmd, train_args.options, train_args.weighting);
    train_cmd->add_option("--model-out", train_args.model_out, "model file to write")->required();

    ModelDataArgs predict_args;
    std::string trace_out;
    CLI::App* predict_cmd = app.add_subcommand("predict", "write a probability/decision trace");
    add_data_flags(predict_cmd, predict_args.data);
    predict_cmd->add_option("--model", predict_args.model_path, "model file")->required();
    predict_cmd->add_option("--trace-out", trace_out, "trace CSV to write")->required();
    predict_args.slice = "all";
    predict_cmd->add_option("--on", predict_args.slice, "slice: train|test|all")
        ->check(CLI::IsMember({"train", "test", "all"}));

    ModelDataArgs eval_args;
    std::string report_out;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "score a model and write a report");
    add_data_flags(eval_cmd, eval_args.data);
    eval_cmd->add_option("--model", eval_args.model_path, "model file")->required();
    eval_cmd->add_option("--report-out", report_out, "report file to write");
    eval_cmd->add_option("--on", eval_args.slice, "slice: train|test|all")
        ->check(CLI::IsMember({"train", "test", "all"}));

    SelectQArgs select_args;
    CLI::App* select_cmd = app.add_subcommand("select-q", "choose the memory depth by forward scan");
    add_data_flags(select_cmd, select_args.data);
    select_cmd->add_option("--delta-t", select_args.delta_t, "prediction horizon in steps");
    select_cmd->add_option("--delta-t-days", select_args.delta_t_days,
                           "prediction horizon in days (overrides --delta-t)");
    select_cmd->add_option("--candidates", select_args.candidates, "q candidates: 'a..b' or list");
    add_train_config_flags(select_cmd, select_args.options, select_args.weighting);
    select_cmd->add_option("--val-frac", select_args.val_fraction,
                           "fraction of training failures kept for fitting (rest validate q)");
    select_cmd->add_option("--report-out", select_args.report_out, "score list file");

    ModelDataArgs sweep_args;
    std::string thresholds_text = "0.5,0.7,0.9";
    std::string sweep_report_out;
    CLI::App* sweep_cmd = app.add_subcommand("sweep-threshold", "metrics across decision thresholds");
    add_data_flags(sweep_cmd, sweep_args.data);
    sweep_cmd->add_option("--model", sweep_args.model_path, "model file")->required();
    sweep_cmd->add_option("--thresholds", thresholds_text, "comma-separated thresholds in (0,1)");
    sweep_cmd->add_option("--on", sweep_args.slice, "slice: train|test|all")
        ->check(CLI::IsMember({"train", "test", "all"}));
    sweep_cmd->add_option("--report-out", sweep_report_out, "report file to write");

    DataArgs corr_data;
    double corr_threshold = 0.95;
    std::string matrix_out;
    CLI::App* corr_cmd = app.add_subcommand("correlate", "pairwise Pearson screen of the sensors");
    add_data_flags(corr_cmd, corr_data, /*need_failures=*/false);
    corr_cmd->add_option("--threshold", corr_threshold, "flagging threshold on |r|");
    corr_cmd->add_option("--matrix-out", matrix_out, "full matrix CSV to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (synth_cmd->parsed()) return run_synth(synth_args);
        if (train_cmd->parsed()) return run_train(train_args);
        if (predict_cmd->parsed()) return run_predict(predict_args, trace_out);
        if (eval_cmd->parsed()) return run_evaluate(eval_args, report_out);
        if (select_cmd->parsed()) return run_select_q(select_args);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args, thresholds_text, sweep_report_out);
        if (corr_cmd->parsed()) return run_correlate(corr_data, corr_threshold, matrix_out);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
