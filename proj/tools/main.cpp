// Command-line front end: tutte, pointed, tensor, verify, suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "reltutte/error.hpp"
#include "reltutte/graph_io.hpp"
#include "reltutte/pointed.hpp"
#include "reltutte/relative_tutte.hpp"
#include "reltutte/tensor.hpp"
#include "suite.hpp"

namespace {

using namespace reltutte;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kVerificationFailed = 1, kInputError = 2, kInternal = 3 };

struct Options {
  std::uint64_t seed = 1;
  unsigned trials = 32;
  bool flip = false;
  std::string format = "text";
  unsigned jobs = 1;
  int instances = 20;
  std::string lambda = "lam";
  std::string out;
  bool corrupt_rhs = false;
  bool inject_fault = false;
  std::vector<std::string> files;
};

class Printer {
 public:
  Printer(std::ostream& os, const Options& opt, std::string command) : os_(os), jsonl_(opt.format == "jsonl") {
    if (jsonl_) {
      ordered_json j;
      j["name"] = "run";
      j["command"] = command;
      j["seed"] = opt.seed;
      j["trials"] = opt.trials;
      os_ << j.dump() << "\n";
    } else {
      os_ << "# " << command << " seed=" << opt.seed << " trials=" << opt.trials << "\n";
    }
  }

  void poly(const std::string& name, const RelPolynomial& p) {
    if (!jsonl_) {
      os_ << name << " = " << p.str() << "\n";
      return;
    }
    ordered_json j;
    j["name"] = name;
    j["terms"] = ordered_json::array();
    for (const auto& t : rendered_terms(p)) {
      ordered_json term;
      term["coeff"] = t.coeff;
      term["vars"] = t.vars;
      term["zkey"] = t.zkey;
      j["terms"].push_back(std::move(term));
    }
    os_ << j.dump() << "\n";
  }

  void record(const ordered_json& j) {
    if (jsonl_) {
      os_ << j.dump() << "\n";
      return;
    }
    for (const auto& [k, v] : j.items()) {
      if (k == "name") continue;
      os_ << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }

 private:
  std::ostream& os_;
  bool jsonl_;
};

int cmd_tutte(const Options& opt) {
  const auto g = parse_graph_file(opt.files.at(0));
  const auto sum = universal_tutte_statesum(g);
  const auto rec = tutte_recursive(g);
  if (!(sum == rec)) throw Error(Errc::InternalInvariant, "state sum and recursion disagree");
  Printer pr(std::cout, opt, "tutte");
  pr.poly("T", sum);
  return kOk;
}

int cmd_pointed(const Options& opt) {
  const auto pg = PointedGraph::from(parse_graph_file(opt.files.at(0)));
  const auto pp = pointed_polys(pg);
  Printer pr(std::cout, opt, "pointed");
  pr.poly("T_C", pp.T_C);
  pr.poly("T_L", pp.T_L);
  pr.poly("T_0", pp.T_0);
  pr.poly("T_slash", pp.T_slash);
  pr.poly("T_minus", pp.T_minus);
  return kOk;
}

TensorInstance load_instance(const Options& opt) {
  return TensorInstance::make(parse_graph_file(opt.files.at(0)), parse_graph_file(opt.files.at(1)), opt.lambda);
}

int cmd_tensor(const Options& opt) {
  const auto ti = load_instance(opt);
  const auto product = tensor_product(ti, opt.flip);
  const std::string text = "# tensor product of " + opt.files[0] + " and " + opt.files[1] + " along " + opt.lambda +
                           "\n" + format_graph(product);
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw Error(Errc::ParseError, opt.out + ": cannot write file");
    f << text;
  } else if (opt.format == "text") {
    std::cout << text;
  }
  Printer pr(std::cout, opt, "tensor");
  pr.poly("T", universal_tutte_statesum(product, product_labeling(ti, product)));
  return kOk;
}

int cmd_verify(const Options& opt) {
  const auto ti = load_instance(opt);
  const auto product = tensor_product(ti, opt.flip);
  const auto lhs = universal_tutte_statesum(product, product_labeling(ti, product));
  auto rhs = theorem_6_5_rhs(ti);
  if (opt.corrupt_rhs) rhs += RelPolynomial::var(VarKind::x, opt.lambda) * RelPolynomial::z(PivotClassKey{});
  const bool ok = equal_mod_ideal(lhs, rhs, opt.trials, opt.seed);
  Printer pr(std::cout, opt, "verify");
  pr.poly("lhs", lhs);
  pr.poly("rhs", rhs);
  ordered_json j;
  j["name"] = "verify";
  j["equal_mod_ideal"] = ok;
  j["structurally_equal"] = lhs == rhs;
  j["lhs_terms"] = lhs.size();
  j["rhs_terms"] = rhs.size();
  j["flip_orientation"] = opt.flip;
  pr.record(j);
  return ok ? kOk : kVerificationFailed;
}

int cmd_suite(const Options& opt) {
  cli::SuiteConfig cfg{opt.seed, opt.trials, opt.instances, opt.jobs, opt.inject_fault};
  const auto outcomes = cli::run_suites(cfg);
  if (opt.format == "jsonl") {
    cli::print_jsonl(std::cout, cfg, outcomes);
  } else {
    cli::print_text(std::cout, cfg, outcomes);
  }
  for (const auto& o : outcomes)
    if (o.failed) return kVerificationFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative Tutte polynomials of colored multigraphs with zero edges"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "Seed for randomized checks and instance generation");
  app.add_option("--trials", opt.trials, "Evaluation points per identity test")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));

  auto* tutte = app.add_subcommand("tutte", "Universal relative Tutte polynomial of a graph file");
  tutte->add_option("graph", opt.files, "Graph file")->required()->expected(1);

  auto* pointed = app.add_subcommand("pointed", "The five pointed polynomials of a pointed graph file");
  pointed->add_option("graph", opt.files, "Graph file with one pointed edge")->required()->expected(1);

  auto* tensor = app.add_subcommand("tensor", "Tensor product of g1 and g2 along lambda, and its polynomial");
  tensor->add_option("files", opt.files, "g1 and g2 graph files")->required()->expected(2);
  tensor->add_option("--lambda", opt.lambda, "Color of the replaced edges of g1");
  tensor->add_option("--out", opt.out, "Write the product graph here instead of stdout");
  tensor->add_flag("--flip-orientation", opt.flip, "Glue each copy with the endpoints swapped");

  auto* verify = app.add_subcommand("verify", "Check the tensor product formula on one instance");
  verify->add_option("files", opt.files, "g1 and g2 graph files")->required()->expected(2);
  verify->add_option("--lambda", opt.lambda, "Color of the replaced edges of g1");
  verify->add_flag("--flip-orientation", opt.flip, "Glue each copy with the endpoints swapped");
  verify->add_flag("--corrupt-rhs", opt.corrupt_rhs, "Add a spurious term to the right side (negative control)");

  auto* suite = app.add_subcommand("suite", "Run the randomized property suites");
  suite->add_option("--instances", opt.instances, "Instances per suite");
  suite->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_flag("--inject-fault", opt.inject_fault, "Swap two pointed polynomials in the tensor suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*tutte) return cmd_tutte(opt);
    if (*pointed) return cmd_pointed(opt);
    if (*tensor) return cmd_tensor(opt);
    if (*verify) return cmd_verify(opt);
    if (*suite) return cmd_suite(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::InternalInvariant ? kInternal : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
