#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linml/baselines.hpp"
#include "linml/bench.hpp"
#include "linml/error.hpp"
#include "linml/model_io.hpp"
#include "linml/multiclass.hpp"
#include "linml/util.hpp"

namespace {

using namespace linml;

struct TrainOpts {
  std::string data;
  std::string task = "bin";
  std::string out;
  std::string consensus = "mean";
  TrainConfig cfg;
};

Task cli_task(const std::string& name) {
  if (name == "reg") return Task::Regression;
  if (name == "bin") return Task::Binary;
  if (name == "ovr") return Task::Multiclass;
  fail(ErrorKind::ConfigInvalid, "unknown task '" + name + "'");
}

std::vector<std::size_t> parse_grid(const std::string& csv) {
  std::vector<std::size_t> grid;
  std::string tok;
  std::istringstream in(csv);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    grid.push_back(std::stoull(tok));
  }
  return grid;
}

void print_metrics(const Metrics& m, Task task) {
  std::cout << "n " << m.n << '\n';
  if (task == Task::Regression) {
    std::cout << "rmse " << format_double(m.rmse) << '\n';
    std::cout << "mae " << format_double(m.mae) << '\n';
    return;
  }
  std::cout << "correct " << m.correct << '\n';
  std::cout << "accuracy " << format_double(m.accuracy) << '\n';
  std::cout << "percent " << accuracy_cell(m) << '\n';
  if (task == Task::Binary) {
    std::cout << "confusion_tn " << m.confusion[0][0] << '\n';
    std::cout << "confusion_fp " << m.confusion[0][1] << '\n';
    std::cout << "confusion_fn " << m.confusion[1][0] << '\n';
    std::cout << "confusion_tp " << m.confusion[1][1] << '\n';
  }
}

int run_train(const TrainOpts& opts) {
  Task task = cli_task(opts.task);
  TrainConfig cfg = opts.cfg;
  auto variant = consensus_from_name(opts.consensus);
  if (!variant) fail(ErrorKind::ConfigInvalid, "unknown consensus '" + opts.consensus + "'");
  cfg.consensus = *variant;
  cfg.validate();

  auto data = parse_libsvm_file(opts.data, task);
  if (task == Task::Multiclass) {
    save_ovr_model_file(train_ovr(data, cfg), opts.out);
  } else {
    auto model = task == Task::Binary ? train_binary(data, cfg) : train_regression(data, cfg);
    save_model_file(model, opts.out);
  }
  std::cout << "model written to " << opts.out << '\n';
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) fail(ErrorKind::DatasetNotFound, "cannot write " + out_path);

  if (model_file_is_ovr(model_path)) {
    auto model = load_ovr_model_file(model_path);
    auto data = parse_libsvm_file(data_path, Task::Multiclass);
    for (const auto& ex : data.examples) out << predict_ovr(model, ex.features) << '\n';
  } else {
    auto model = load_model_file(model_path);
    auto data = parse_libsvm_file(data_path, model.task);
    for (const auto& ex : data.examples) {
      double p = predict(model, ex.features);
      out << (model.task == Task::Binary ? std::to_string(int(p)) : format_double(p)) << '\n';
    }
  }
  return 0;
}

int run_eval(const std::string& model_path, const std::string& data_path) {
  std::vector<double> predictions;
  std::vector<double> truths;
  Task task;
  if (model_file_is_ovr(model_path)) {
    auto model = load_ovr_model_file(model_path);
    auto data = parse_libsvm_file(data_path, Task::Multiclass);
    task = Task::Multiclass;
    for (const auto& ex : data.examples) {
      predictions.push_back(double(predict_ovr(model, ex.features)));
      truths.push_back(ex.target);
    }
  } else {
    auto model = load_model_file(model_path);
    auto data = parse_libsvm_file(data_path, model.task);
    task = model.task;
    for (const auto& ex : data.examples) {
      predictions.push_back(predict(model, ex.features));
      truths.push_back(ex.target);
    }
  }
  print_metrics(evaluate(predictions, truths, task), task);
  return 0;
}

int run_tune(const std::string& data_path, const std::string& task_name,
             const std::string& grid_csv, double val_fraction, std::uint64_t seed,
             TrainConfig cfg) {
  Task task = cli_task(task_name);
  if (task == Task::Multiclass)
    fail(ErrorKind::ConfigInvalid, "tune handles reg and bin tasks");
  auto grid = parse_grid(grid_csv);
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    fail(ErrorKind::ConfigInvalid, "val-fraction must lie in (0,1)");
  cfg.seed = seed;
  auto data = parse_libsvm_file(data_path, task);
  auto [train, val] = split_dataset(data, 1.0 - val_fraction, seed);
  std::cout << "best_k " << tune_k(train, val, grid, cfg) << '\n';
  return 0;
}

int run_gen(const std::string& fn_name, std::size_t n, const std::string& range,
            const std::string& mode_name, std::uint64_t seed, const std::string& out_path) {
  SyntheticFn fn;
  if (fn_name == "sqrt")
    fn = SyntheticFn::Sqrt;
  else if (fn_name == "exp")
    fn = SyntheticFn::Exp;
  else
    fail(ErrorKind::ConfigInvalid, "unknown fn '" + fn_name + "'");

  SyntheticMode mode;
  if (mode_name == "reg")
    mode = SyntheticMode::Regression;
  else if (mode_name == "binmed")
    mode = SyntheticMode::BinarizedAtMedian;
  else
    fail(ErrorKind::ConfigInvalid, "unknown mode '" + mode_name + "'");

  auto colon = range.find(':');
  if (colon == std::string::npos)
    fail(ErrorKind::ConfigInvalid, "range must be lo:hi");
  double lo = std::stod(range.substr(0, colon));
  double hi = std::stod(range.substr(colon + 1));

  write_libsvm_file(generate_synthetic(fn, n, lo, hi, mode, seed), out_path);
  std::cout << n << " examples written to " << out_path << '\n';
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_bench_spec(spec_path);
  auto report = run_benchmark(spec);
  std::cout << render_report(report, spec.report_timing);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::DatasetNotFound, "cannot write " + out_path);
    out << report_to_json(report, spec.report_timing).dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linml: projected nearest-neighbor consensus learning"};
  app.require_subcommand(1);

  TrainOpts train_opts;
  auto* train_cmd = app.add_subcommand("train", "fit a model and write it to a file");
  train_cmd->add_option("--data", train_opts.data, "LIBSVM training file")->required();
  train_cmd->add_option("--task", train_opts.task, "reg|bin|ovr")->required();
  train_cmd->add_option("--k", train_opts.cfg.k, "neighbor count")->required();
  train_cmd->add_option("--inc", train_opts.cfg.inc, "pseudo-label step");
  train_cmd->add_option("--eps", train_opts.cfg.eps, "agreement tolerance");
  train_cmd->add_option("--max-iters", train_opts.cfg.max_iters, "refinement pass limit");
  train_cmd->add_option("--seed", train_opts.cfg.seed, "random seed");
  train_cmd->add_option("--consensus", train_opts.consensus, "mean|median");
  train_cmd->add_option("--ridge-lambda", train_opts.cfg.ridge_lambda, "ridge penalty");
  train_cmd->add_flag("--no-leave-self-out",
                      [&](std::int64_t) { train_opts.cfg.leave_self_out = false; },
                      "include a point in its own training neighborhood");
  train_cmd->add_option("--out", train_opts.out, "model output path")->required();

  std::string predict_model, predict_data, predict_out;
  auto* predict_cmd = app.add_subcommand("predict", "one prediction per line, input order");
  predict_cmd->add_option("--model", predict_model, "model path")->required();
  predict_cmd->add_option("--data", predict_data, "LIBSVM input file")->required();
  predict_cmd->add_option("--out", predict_out, "predictions output path")->required();

  std::string eval_model, eval_data;
  auto* eval_cmd = app.add_subcommand("eval", "score a model against labeled data");
  eval_cmd->add_option("--model", eval_model, "model path")->required();
  eval_cmd->add_option("--data", eval_data, "LIBSVM labeled file")->required();

  std::string tune_data, tune_grid, tune_task = "bin";
  double tune_val_fraction = 0.2;
  std::uint64_t tune_seed = 0;
  TrainConfig tune_cfg;
  auto* tune_cmd = app.add_subcommand("tune", "pick k from a grid on a validation split");
  tune_cmd->add_option("--data", tune_data, "LIBSVM training file")->required();
  tune_cmd->add_option("--k-grid", tune_grid, "comma-separated k candidates")->required();
  tune_cmd->add_option("--val-fraction", tune_val_fraction, "validation share");
  tune_cmd->add_option("--seed", tune_seed, "random seed");
  tune_cmd->add_option("--task", tune_task, "reg|bin");
  tune_cmd->add_option("--inc", tune_cfg.inc, "pseudo-label step");
  tune_cmd->add_option("--eps", tune_cfg.eps, "agreement tolerance");
  tune_cmd->add_option("--max-iters", tune_cfg.max_iters, "refinement pass limit");

  std::string gen_fn, gen_range, gen_mode, gen_out;
  std::size_t gen_n = 1000;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic LIBSVM dataset");
  gen_cmd->add_option("--fn", gen_fn, "sqrt|exp")->required();
  gen_cmd->add_option("--n", gen_n, "example count")->required();
  gen_cmd->add_option("--range", gen_range, "lo:hi")->required();
  gen_cmd->add_option("--mode", gen_mode, "reg|binmed")->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed");
  gen_cmd->add_option("--out", gen_out, "output path")->required();

  std::string bench_spec, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark spec and print the report");
  bench_cmd->add_option("--spec", bench_spec, "JSON benchmark spec")->required();
  bench_cmd->add_option("--out", bench_out, "also write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << e.what() << '\n';
      return 1;
    }
    return app.exit(e);  // --help
  }

  try {
    if (*train_cmd) return run_train(train_opts);
    if (*predict_cmd) return run_predict(predict_model, predict_data, predict_out);
    if (*eval_cmd) return run_eval(eval_model, eval_data);
    if (*tune_cmd)
      return run_tune(tune_data, tune_task, tune_grid, tune_val_fraction, tune_seed, tune_cfg);
    if (*gen_cmd) return run_gen(gen_fn, gen_n, gen_range, gen_mode, gen_seed, gen_out);
    if (*bench_cmd) return run_bench(bench_spec, bench_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(category(e.kind()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
