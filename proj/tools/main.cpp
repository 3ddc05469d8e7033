// fiskit command line: classify, train, eval, bench, gen.
//
// Exit codes: 0 success, 2 input or parse error, 3 zero-firing input,
// 4 numerical failure, 5 requested diagnostic undefined for this dataset.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fiskit/anfis.hpp"
#include "fiskit/dataset.hpp"
#include "fiskit/diagnostics.hpp"
#include "fiskit/dsl.hpp"
#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"
#include "fiskit/terrorism.hpp"

namespace {

using namespace fiskit;

constexpr const char* kRmseFooter =
    "# rmse values are absolute, on the model output scale (not normalized)";

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FisError(Errc::BadFile, "cannot write '" + path + "'");
}

std::vector<MfKind> parse_mf_list(const std::vector<std::string>& names) {
  std::vector<MfKind> kinds;
  for (const std::string& name : names) {
    if (name == "all") {
      kinds.assign(std::begin(kAllMfKinds), std::end(kAllMfKinds));
      continue;
    }
    auto kind = mf_kind_from_name(name);
    if (!kind) {
      throw FisError(Errc::BadFile, "unknown membership function family '" + name + "'");
    }
    kinds.push_back(*kind);
  }
  return kinds;
}

void require_labeled(const Dataset& data, const char* op) {
  if (data.size() == 0) throw FisError(Errc::EmptyInput, std::string(op) + ": empty dataset");
  if (!data.fully_labeled()) {
    throw FisError(Errc::EmptyInput, std::string(op) + ": dataset has unlabeled records");
  }
}

// Fisher-Yates with explicit 64-bit draws so the split is identical across
// standard library implementations.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 gen(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

struct GenArgs {
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  FisModel oracle = default_terrorism_fis();
  Dataset data = gen_synthetic(args.n, args.seed, oracle);
  write_file(args.out, to_csv(data));
  std::cout << "wrote " << data.size() << " records to " << args.out << "\n";
  return 0;
}

struct ClassifyArgs {
  std::string model_path;
  std::string data_path;
};

int cmd_classify(const ClassifyArgs& args) {
  FisModel model = load_model(args.model_path);
  if (model.mode != InferMode::Coa) {
    throw FisError(Errc::ModeMismatch, "classify needs a coa model");
  }
  Dataset data = load_csv(args.data_path);
  if (data.size() == 0) throw FisError(Errc::EmptyInput, "classify: empty dataset");
  if (data.n_inputs() != model.inputs.size()) {
    throw FisError(Errc::ArityMismatch, "dataset has " + std::to_string(data.n_inputs()) +
                                            " input columns, model expects " +
                                            std::to_string(model.inputs.size()));
  }

  std::cout << "# classes:";
  for (const Term& t : model.output.terms) std::cout << " " << t.label;
  std::cout << "\n";

  std::size_t zero_firing = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::cout << "record=" << i << " inputs=";
    for (std::size_t v = 0; v < data.x[i].size(); ++v) {
      if (v) std::cout << ",";
      std::cout << format_double(data.x[i][v]);
    }
    try {
      ClassifyResult result = classify(model, data.x[i]);
      std::cout << " crisp=" << format_double(result.crisp) << " class=" << result.label
                << " act=";
      for (std::size_t c = 0; c < result.activations.size(); ++c) {
        if (c) std::cout << ",";
        std::cout << format_double(result.activations[c]);
      }
      std::cout << "\n";
    } catch (const FisError& e) {
      if (e.code() != Errc::ZeroFiring) throw;
      ++zero_firing;
      std::cout << " error=zero_firing\n";
    }
  }

  ClassScoreReport report;
  try {
    report = aggregate_class_scores(model, data.x);
  } catch (const FisError& e) {
    if (e.code() != Errc::EmptyInput) throw;
  }
  std::cout << "n_records=" << report.n_records << "\n";
  std::cout << "n_classified=" << report.n_classified << "\n";
  std::cout << "n_zero_firing=" << report.n_zero_firing << "\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const ClassScore& cls = report.per_class[c];
    double mean_membership = 0.0;
    for (double m : cls.memberships) mean_membership += m;
    if (!cls.memberships.empty()) {
      mean_membership /= static_cast<double>(cls.memberships.size());
    }
    std::cout << "class=" << report.labels[c]
              << " mean_activation=" << format_double(cls.mean_output)
              << " mean_membership=" << format_double(mean_membership) << "\n";
  }
  return zero_firing > 0 ? 3 : 0;
}

struct TrainArgs {
  std::string model_path;
  std::string data_path;
  std::string out = "trained.fis";
  std::string report_path;
  std::string mf = "triangular";
  TrainConfig cfg;
  double split = 0.0;
};

std::string render_report(const TrainArgs& args, const TrainReport& report) {
  std::string text;
  text += "# trained with epochs=" + std::to_string(args.cfg.epochs) +
          " learn_rate=" + format_double(args.cfg.learn_rate) +
          " ridge=" + format_double(args.cfg.ridge) + " tol=" + format_double(args.cfg.tol) +
          " seed=" + std::to_string(args.cfg.seed) + " split=" + format_double(args.split) +
          "\n";
  text += "epochs_run=" + std::to_string(report.epochs_run) + "\n";
  text += "stopped_early=" + std::to_string(report.stopped_early ? 1 : 0) + "\n";
  text += "final_train_rmse=" + format_double(report.final_train_rmse) + "\n";
  if (report.final_test_rmse) {
    text += "final_test_rmse=" + format_double(*report.final_test_rmse) + "\n";
  }
  text += "zero_firing_train=" + std::to_string(report.excluded_per_epoch.back()) + "\n";
  for (std::size_t e = 0; e < report.rmse_per_epoch.size(); ++e) {
    text += "rmse_epoch_" + std::to_string(e + 1) + "=" +
            format_double(report.rmse_per_epoch[e]) + "\n";
  }
  text += std::string(kRmseFooter) + "\n";
  return text;
}

int cmd_train(const TrainArgs& args) {
  FisModel source = load_model(args.model_path);
  auto kind = mf_kind_from_name(args.mf);
  if (!kind) {
    throw FisError(Errc::BadFile, "unknown membership function family '" + args.mf + "'");
  }
  FisModel model;
  if (source.mode == InferMode::Coa) {
    model = build_grid_anfis(source.inputs, *kind, source.tnorm);
    model.out_lo = source.output.lo;
    model.out_hi = source.output.hi;
  } else {
    model = std::move(source);
  }

  Dataset data = load_csv(args.data_path);
  require_labeled(data, "train");
  if (data.n_inputs() != model.inputs.size()) {
    throw FisError(Errc::ArityMismatch, "dataset has " + std::to_string(data.n_inputs()) +
                                            " input columns, model expects " +
                                            std::to_string(model.inputs.size()));
  }
  if (!(args.split >= 0.0 && args.split < 1.0)) {
    throw FisError(Errc::BadFile, "--split must lie in [0, 1)");
  }

  Dataset train_part = data;
  Dataset test_part;
  if (args.split > 0.0) {
    std::vector<std::size_t> idx = shuffled_indices(data.size(), args.cfg.seed);
    std::size_t n_test = static_cast<std::size_t>(args.split * static_cast<double>(data.size()));
    std::vector<std::size_t> test_idx(idx.begin(), idx.begin() + n_test);
    std::vector<std::size_t> train_idx(idx.begin() + n_test, idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    train_part = data.select(train_idx);
    test_part = data.select(test_idx);
  }
  if (train_part.size() < model.inputs.size() + 1) {
    throw FisError(Errc::EmptyInput, "train: needs at least " +
                                         std::to_string(model.inputs.size() + 1) +
                                         " records after the split");
  }

  TrainReport report =
      train(model, train_part, test_part.size() > 0 ? &test_part : nullptr, args.cfg);

  write_file(args.out, serialize_model(model));
  std::string text = render_report(args, report);
  if (args.report_path.empty()) {
    std::cout << text;
  } else {
    write_file(args.report_path, text);
    std::cout << "wrote model to " << args.out << " and report to " << args.report_path << "\n";
  }
  return 0;
}

struct EvalArgs {
  std::string model_path;
  std::string data_path;
  double ridge = 0.0;
};

int cmd_eval(const EvalArgs& args) {
  FisModel model = load_model(args.model_path);
  Dataset data = load_csv(args.data_path);
  require_labeled(data, "eval");

  if (model.mode == InferMode::Coa) {
    CoaEval eval = eval_coa(model, data);
    std::cout << "n=" << eval.n << "\n";
    std::cout << "zero_firing=" << eval.zero_firing.size() << "\n";
    std::cout << "mse=" << format_double(eval.mse) << "\n";
    std::cout << "rmse=" << format_double(eval.rmse) << "\n";
    std::cout << kRmseFooter << "\n";
    return 0;
  }

  EvalDiagnostics diag = eval_tsk(model, data, args.ridge);
  std::cout << "n=" << diag.n << "\n";
  std::cout << "p=" << diag.p << "\n";
  std::cout << "zero_firing=" << diag.zero_firing.size() << "\n";
  std::cout << "mse=" << format_double(diag.mse) << "\n";
  std::cout << "rmse=" << format_double(diag.rmse) << "\n";
  std::cout << "deleted_defined=" << (diag.deleted_defined ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < diag.n; ++i) {
    std::cout << "record=" << diag.record_index[i]
              << " prediction=" << format_double(diag.predictions[i])
              << " residual=" << format_double(diag.residuals[i])
              << " leverage=" << format_double(diag.leverage[i]);
    if (diag.deleted_defined) {
      std::cout << " deleted_mse=" << format_double(diag.deleted_mse[i]);
    }
    std::cout << "\n";
  }
  std::cout << kRmseFooter << "\n";
  if (!diag.deleted_defined) {
    std::cerr << "error: deleted-mse diagnostic undefined, needs n > p + 1 (n=" << diag.n
              << ", p=" << diag.p << ")\n";
    return 5;
  }
  return 0;
}

struct BenchArgs {
  std::size_t n = 500;
  std::uint64_t seed = 0;
  std::vector<std::string> mf = {"all"};
  TrainConfig cfg;
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  std::vector<MfKind> kinds = parse_mf_list(args.mf);
  std::string file;
  file += "bench_n=" + std::to_string(args.n) + "\n";
  file += "bench_seed=" + std::to_string(args.seed) + "\n";
  file += "bench_epochs=" + std::to_string(args.cfg.epochs) + "\n";

  std::printf("%-20s %12s %12s %10s\n", "family", "fis_rmse", "anfis_rmse", "direct");
  for (MfKind kind : kinds) {
    std::string name(mf_kind_name(kind));
    try {
      FisModel expert = default_terrorism_fis(kind, TNorm::Product);
      Dataset data = gen_synthetic(args.n, args.seed, expert);
      CoaEval fis_eval = eval_coa(expert, data);

      FisModel anfis = build_grid_anfis(expert.inputs, kind, TNorm::Product);
      anfis.out_lo = expert.output.lo;
      anfis.out_hi = expert.output.hi;
      TrainConfig cfg = args.cfg;
      cfg.seed = args.seed;
      TrainReport report = train(anfis, data, nullptr, cfg);

      std::printf("%-20s %12.6f %12.6f %10s\n", name.c_str(), fis_eval.rmse,
                  report.final_train_rmse, "n/a");
      file += "family=" + name + " fis_rmse=" + format_double(fis_eval.rmse) +
              " anfis_rmse=" + format_double(report.final_train_rmse) + " direct=n/a\n";
    } catch (const FisError& e) {
      std::printf("%-20s %12s %12s %10s\n", name.c_str(), "failed", "failed", "n/a");
      file += "family=" + name + " error=" + e.what() + "\n";
    }
  }
  std::printf("%s\n", kRmseFooter);
  file += std::string(kRmseFooter) + "\n";
  if (!args.out.empty()) write_file(args.out, file);
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"fuzzy inference and adaptive network training toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a labeled synthetic event dataset");
  gen->add_option("--n", gen_args.n, "number of records")->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "random seed")->capture_default_str();
  gen->add_option("--out", gen_args.out, "output csv path")->required();

  ClassifyArgs classify_args;
  CLI::App* cls = app.add_subcommand("classify", "classify event records with a coa model");
  cls->add_option("model", classify_args.model_path, "model file (.fis)")->required();
  cls->add_option("data", classify_args.data_path, "dataset csv")->required();

  TrainArgs train_args;
  CLI::App* tr = app.add_subcommand("train", "fit consequents and tune premises on a dataset");
  tr->add_option("model", train_args.model_path,
                 "starting model (.fis); a coa model is expanded to a full rule grid")
      ->required();
  tr->add_option("data", train_args.data_path, "labeled dataset csv")->required();
  tr->add_option("--out", train_args.out, "trained model path")->capture_default_str();
  tr->add_option("--report", train_args.report_path,
                 "write the training report here instead of stdout");
  tr->add_option("--epochs", train_args.cfg.epochs, "training epochs")->capture_default_str();
  tr->add_option("--lr", train_args.cfg.learn_rate, "premise learning rate")
      ->capture_default_str();
  tr->add_option("--ridge", train_args.cfg.ridge, "consequent ridge weight")
      ->capture_default_str();
  tr->add_option("--tol", train_args.cfg.tol, "early-stop rmse improvement threshold")
      ->capture_default_str();
  tr->add_option("--split", train_args.split, "held-out fraction in [0, 1)")
      ->capture_default_str();
  tr->add_option("--seed", train_args.cfg.seed, "seed for the train/test split")
      ->capture_default_str();
  tr->add_option("--mf", train_args.mf, "premise family used when the input model is coa")
      ->capture_default_str();

  EvalArgs eval_args;
  CLI::App* ev = app.add_subcommand("eval", "goodness-of-fit diagnostics on a labeled dataset");
  ev->add_option("model", eval_args.model_path, "model file (.fis)")->required();
  ev->add_option("data", eval_args.data_path, "labeled dataset csv")->required();
  ev->add_option("--ridge", eval_args.ridge, "ridge weight for the leverage projector")
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* be = app.add_subcommand("bench", "expert-model vs trained-model rmse per family");
  be->add_option("--n", bench_args.n, "synthetic records per family")->capture_default_str();
  be->add_option("--seed", bench_args.seed, "random seed")->capture_default_str();
  be->add_option("--mf", bench_args.mf, "families to bench, or 'all'")
      ->delimiter(',')
      ->capture_default_str();
  be->add_option("--epochs", bench_args.cfg.epochs, "training epochs")->capture_default_str();
  be->add_option("--lr", bench_args.cfg.learn_rate, "premise learning rate")
      ->capture_default_str();
  be->add_option("--ridge", bench_args.cfg.ridge, "consequent ridge weight")
      ->capture_default_str();
  be->add_option("--tol", bench_args.cfg.tol, "early-stop rmse improvement threshold")
      ->capture_default_str();
  be->add_option("--out", bench_args.out, "also write a key=value report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*gen) return cmd_gen(gen_args);
  if (*cls) return cmd_classify(classify_args);
  if (*tr) return cmd_train(train_args);
  if (*ev) return cmd_eval(eval_args);
  if (*be) return cmd_bench(bench_args);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroFiringRecords& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const FisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ZeroFiring:
      case Errc::ZeroFiringRecord:
        return 3;
      case Errc::Singular:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
