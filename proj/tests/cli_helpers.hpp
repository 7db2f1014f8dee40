#ifndef NBAUDIT_TESTS_CLI_HELPERS_HPP
#define NBAUDIT_TESTS_CLI_HELPERS_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace testutil {

namespace fs = std::filesystem;

inline std::string source(const std::string& rel) { return std::string(NBAUDIT_SOURCE_DIR) + "/" + rel; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("nbaudit-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  std::string str(const std::string& rel = "") const { return rel.empty() ? path_.string() : (path_ / rel).string(); }

private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code = -1;
  std::string err;
};

/// Runs the nbaudit binary with `args` (already shell-quoted), capturing stderr.
inline CliResult run_cli(const std::string& args, const fs::path& scratch) {
  auto err = scratch / "stderr.txt";
  std::string cmd = std::string("\"") + NBAUDIT_CLI + "\" " + args + " >/dev/null 2>\"" + err.string() + "\"";
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.err = slurp(err);
  return r;
}

/// File contents with any JSON "timestamp" member dropped.
inline std::string comparable(const fs::path& p) {
  auto text = slurp(p);
  if (p.extension() != ".json") return text;
  auto j = nlohmann::ordered_json::parse(text);
  j.erase("timestamp");
  return j.dump(2);
}

/// Relative path -> comparable content for every regular file under `dir`.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = comparable(e.path());
  return out;
}

}  // namespace testutil

#endif  // NBAUDIT_TESTS_CLI_HELPERS_HPP
