#include <elimat/acceptance.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

elimat::JobResult selftest() {
  elimat::JobResult res;
  nlohmann::json crit = nlohmann::json::array();
  bool all = true;
  for (const auto& r : elimat::run_acceptance([](const elimat::CriterionResult& r) {
         std::cerr << elimat::format_result(r) << "\n";
       })) {
    crit.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    all = all && r.passed;
  }
  res.report = {{"command", "selftest"}, {"result", {{"criteria", crit}, {"all_passed", all}}}};
  res.exit_code = all ? elimat::kExitOk : elimat::kExitInternal;
  return res;
}

nlohmann::json read_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw elimat::JobError(elimat::kExitInvalid, "cannot open job file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw elimat::JobError(elimat::kExitInvalid, std::string("job is not valid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elimat: elimination matrices for rational maps"};
  app.require_subcommand(1);
  std::string job_path, output, format, cache_dir = ".elimat-cache";
  bool force = false, no_cache = false;

  std::vector<CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    if (name != "selftest") {
      sub->add_option("job", job_path, "job file (JSON)")->required()->check(CLI::ExistingFile);
      sub->add_option("-o,--output", output, "write the report here instead of stdout");
      sub->add_flag("--force", force, "allow degrees outside the certified region");
      sub->add_option("--format", format, "json or csv (matrep only)")->check(CLI::IsMember({"json", "csv"}));
      sub->add_option("--cache-dir", cache_dir, "matrix cache directory");
      sub->add_flag("--no-cache", no_cache, "do not read or write the matrix cache");
    }
    subs.push_back(sub);
  };
  add("run", "run a job using its own command field");
  add("mubasis", "mu-basis of a P^1 parameterization");
  add("matrep", "build (or reuse) the elimination matrix M_nu");
  add("fiber", "fiber degrees and preimages of target points");
  add("strata", "Fitting strata of target points");
  add("implicitize", "implicit equation of a curve or hypersurface");
  add("jacfibers", "Jacobian minors and one-dimensional fibers");
  add("project", "orthogonal projections onto a parameterized surface");
  add("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  elimat::JobSpec spec;
  elimat::JobResult res;
  try {
    if (command == "selftest") {
      spec.command = "selftest";
    } else {
      spec = elimat::parse_job(read_job(job_path));
      if (command != "run" && spec.command != command)
        throw elimat::JobError(elimat::kExitInvalid,
                               "job command '" + spec.command + "' does not match '" + command + "'");
      if (force) spec.force = true;
      if (!format.empty()) spec.format = format;
      if (!output.empty()) spec.output = output;
    }
    elimat::RunOptions opts;
    if (!no_cache) opts.cache_dir = cache_dir;
    res = elimat::run_job(spec, opts, selftest);
  } catch (const elimat::JobError& e) {
    res.exit_code = e.code();
    res.report = {{"command", command}, {"error", e.what()}, {"exit_code", e.code()}, {"status", "error"}};
  }

  const std::string body = res.text ? *res.text : res.report.dump(2) + "\n";
  try {
    if (spec.output)
      elimat::write_atomically(*spec.output, body);
    else
      std::cout << body;
  } catch (const std::exception& e) {
    std::cerr << "elimat: " << e.what() << "\n";
    return elimat::kExitInvalid;
  }
  if (res.exit_code != elimat::kExitOk && res.report.contains("error"))
    std::cerr << "elimat: " << res.report["error"].get<std::string>() << "\n";
  return res.exit_code;
}
