#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "k3g16/errors.hpp"
#include "pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace k3g16;
using namespace k3g16::pipeline;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::set<Stage> parse_stages(const std::string& list) {
  std::set<Stage> out;
  if (list.empty() || list == "all") return {all_stages().begin(), all_stages().end()};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(parse_stage(item));
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::invalid_argument, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt_state, path + " is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::invalid_argument, "cannot write " + path.string());
  out << text;
}

int finish(const RunResult& r, const std::string& out_dir) {
  json timings(r.seconds);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "certificate.json", dump(r.certificate));
    save_state(r.state, (fs::path(out_dir) / "state.json").string());
    write_text(fs::path(out_dir) / "timings.json", dump(timings));
  }
  std::cout << report(r.certificate);
  std::cout << "\ntimings (s):\n";
  for (const auto& [k, v] : r.seconds) std::cout << "  " << k << " " << v << "\n";
  return r.mandatory_pass ? 0 : kExitFail;
}

void print_error(const Error& e) {
  const json j{{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational certificate for a family of hyperkähler eightfolds over a prime field"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string stages = "all";
  unsigned threads = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--prime", cfg.p, "Characteristic of the base field")->capture_default_str();
    sub->add_option("--seed", cfg.rng_seed, "RNG seed")->capture_default_str();
    sub->add_option("--stages", stages, "Comma-separated stages, or 'all'")->capture_default_str();
    sub->add_option("--out", cfg.out, "Directory for certificate.json, state.json and timings.json");
    sub->add_option("--threads", threads, "Worker threads (default: K3G16_THREADS or all cores)");
    sub->add_option("--budget-planes", cfg.budgets.planes)->capture_default_str();
    sub->add_option("--budget-points", cfg.budgets.points)->capture_default_str();
    sub->add_option("--budget-retries", cfg.budgets.retries)->capture_default_str();
    sub->add_option("--budget-degree-cap", cfg.budgets.degree_cap)->capture_default_str();
    sub->add_option("--budget-peskine", cfg.budgets.peskine)->capture_default_str();
    sub->add_option("--budget-tangent", cfg.budgets.tangent)->capture_default_str();
  };

  auto* run_cmd = app.add_subcommand("run", "Run the requested stages from scratch");
  add_common(run_cmd);
  auto* resume_cmd = app.add_subcommand("resume", "Continue from a saved state");
  add_common(resume_cmd);
  std::string state_path;
  resume_cmd->add_option("--state", state_path, "State file written by a previous run")->required();

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate from its artifacts");
  verify_cmd->add_option("certificate", cert_path)->required();
  auto* report_cmd = app.add_subcommand("report", "Print a certificate as a table");
  report_cmd->add_option("certificate", cert_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.stages = parse_stages(stages);
    cfg.threads = thread_count(threads);
    if (*run_cmd) return finish(run(cfg), cfg.out);
    if (*resume_cmd) {
      if (stages == "all") cfg.stages.clear();
      State st = load_state(state_path, cfg.p);
      if (cfg.stages.empty())
        for (Stage s : all_stages())
          if (!st.done.count(s)) cfg.stages.insert(s);
      return finish(resume(cfg, std::move(st)), cfg.out);
    }
    const json cert = read_json(cert_path);
    if (*verify_cmd) {
      bool ok = true;
      for (const auto& item : verify(cert)) {
        std::cout << (item.ok ? "ok   " : "FAIL ") << item.id;
        if (!item.detail.empty()) std::cout << "  (" << item.detail << ")";
        std::cout << "\n";
        ok = ok && item.ok;
      }
      const bool pass = cert.at("summary").at("mandatory_pass").get<bool>();
      std::cout << "mandatory checks: " << (pass ? "PASS" : "FAIL") << "\n";
      return ok && pass ? 0 : kExitFail;
    }
    std::cout << report(cert);
    return cert.at("summary").at("mandatory_pass").get<bool>() ? 0 : kExitFail;
  } catch (const Error& e) {
    print_error(e);
    return kExitError;
  } catch (const std::exception& e) {
    print_error(Error(ErrorCode::internal, e.what()));
    return kExitError;
  }
}
