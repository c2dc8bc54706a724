#include "fgt/error.hpp"
#include "fgt/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fgt::Error(fgt::ErrorCode::kSpecError, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Outcome {
  std::string text;
  bool complete = false;
  std::string error;  // spec could not be read or parsed
};

Outcome run_one(const fs::path& path, fgt::OutputFormat format, const fgt::RunOptions& options) {
  Outcome out;
  try {
    auto spec = fgt::parse_run_spec(read_file(path));
    if (spec.name.empty()) spec.name = path.stem().string();
    const auto report = fgt::run(spec, options);
    out.text = fgt::emit(report, format);
    out.complete = report.complete;
  } catch (const fgt::Error& e) {
    out.error = path.string() + ": " + e.what();
  }
  return out;
}

int cmd_run(const std::vector<std::string>& specs, const std::string& format_name, const std::string& out_path,
            bool timing, unsigned jobs) {
  const auto format = format_name == "table" ? fgt::OutputFormat::kTable : fgt::OutputFormat::kJson;
  std::vector<Outcome> results(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) { results[i] = run_one(specs[i], format, {timing}); });

  bool spec_failed = false;
  bool complete = true;
  std::ostringstream text;
  const bool as_array = format == fgt::OutputFormat::kJson && specs.size() > 1;
  if (as_array) text << "[\n";
  bool first = true;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      std::cerr << "error: " << r.error << "\n";
      spec_failed = true;
      continue;
    }
    complete = complete && r.complete;
    if (!first) text << (as_array ? ",\n" : "\n");
    first = false;
    text << (as_array ? r.text.substr(0, r.text.size() - 1) : r.text);
  }
  if (as_array) text << "\n]\n";
  if (spec_failed) return 2;
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << text.str();
  }
  return complete ? 0 : 1;
}

std::string first_difference(const std::string& a, const std::string& b) {
  std::istringstream sa(a), sb(b);
  std::string la, lb;
  for (int line = 1;; ++line) {
    const bool ga = static_cast<bool>(std::getline(sa, la));
    const bool gb = static_cast<bool>(std::getline(sb, lb));
    if (!ga && !gb) return "";
    if (!ga || !gb || la != lb) {
      return "line " + std::to_string(line) + ": expected '" + (gb ? lb : "<eof>") + "', got '" + (ga ? la : "<eof>") +
             "'";
    }
  }
}

int cmd_corpus(const fs::path& dir, bool update, unsigned jobs) {
  std::vector<fs::path> specs;
  for (const auto& entry : fs::directory_iterator(dir / "specs")) {
    if (entry.path().extension() == ".json") specs.push_back(entry.path());
  }
  std::sort(specs.begin(), specs.end());
  if (specs.empty()) {
    std::cerr << "error: no specs under " << (dir / "specs") << "\n";
    return 2;
  }
  std::vector<Outcome> results(specs.size());
  parallel_for(specs.size(), jobs,
               [&](std::size_t i) { results[i] = run_one(specs[i], fgt::OutputFormat::kJson, {}); });

  int failures = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto name = specs[i].stem().string();
    const auto golden = dir / "golden" / (name + ".json");
    const auto& r = results[i];
    if (!r.error.empty()) {
      std::cout << "ERROR    " << name << ": " << r.error << "\n";
      ++failures;
      continue;
    }
    const auto problems = fgt::validate_report(nlohmann::json::parse(r.text));
    if (!problems.empty()) {
      std::cout << "INVALID  " << name << ": " << problems.front() << "\n";
      ++failures;
      continue;
    }
    if (update) {
      fs::create_directories(golden.parent_path());
      std::ofstream(golden, std::ios::binary) << r.text;
      std::cout << "updated  " << name << "\n";
      continue;
    }
    if (!fs::exists(golden)) {
      std::cout << "MISSING  " << name << ": no golden report\n";
      ++failures;
      continue;
    }
    const auto diff = first_difference(r.text, read_file(golden));
    if (diff.empty()) {
      std::cout << "ok       " << name << "\n";
    } else {
      std::cout << "MISMATCH " << name << ": " << diff << "\n";
      ++failures;
    }
  }
  std::cout << specs.size() - static_cast<std::size_t>(failures) << "/" << specs.size() << " corpus entries match\n";
  return failures == 0 ? 0 : 1;
}

int cmd_validate(const std::vector<std::string>& reports) {
  int bad = 0;
  for (const auto& path : reports) {
    std::vector<std::string> problems;
    try {
      const auto doc = nlohmann::json::parse(read_file(path));
      if (doc.is_array()) {
        for (const auto& d : doc) {
          const auto p = fgt::validate_report(d);
          problems.insert(problems.end(), p.begin(), p.end());
        }
      } else {
        problems = fgt::validate_report(doc);
      }
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
    for (const auto& p : problems) std::cout << path << ": " << p << "\n";
    if (problems.empty()) std::cout << path << ": valid\n";
    bad += problems.empty() ? 0 : 1;
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal group strictness, torsion and ramification reports"};
  app.require_subcommand(1);
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* run = app.add_subcommand("run", "Run analyses for one or more spec files");
  std::vector<std::string> specs;
  std::string format = "json";
  std::string out_path;
  bool timing = false;
  run->add_option("--spec", specs, "Spec file (repeatable)")->required()->check(CLI::ExistingFile);
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  run->add_option("--out", out_path, "Write output here instead of stdout");
  run->add_flag("--timing", timing, "Include per-analysis wall times");
  run->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* corpus = app.add_subcommand("corpus", "Check the bundled corpus against its golden reports");
  std::string corpus_dir = FGT_CORPUS_DIR;
  bool update = false;
  corpus->add_option("--dir", corpus_dir, "Corpus directory (specs/ and golden/)")->check(CLI::ExistingDirectory);
  corpus->add_flag("--update", update, "Rewrite the golden reports");
  corpus->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check report files against the report schema");
  std::vector<std::string> reports;
  validate->add_option("reports", reports, "Report files")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(specs, format, out_path, timing, jobs);
  if (corpus->parsed()) return cmd_corpus(corpus_dir, update, jobs);
  if (validate->parsed()) return cmd_validate(reports);
  return 2;
}
