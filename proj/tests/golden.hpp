#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace slog::golden {

/// One scripted run of the command line tool. `stdin_file` is relative to
/// the corpus directory, or empty for no input.
struct Case {
  std::string name;
  std::string stdin_file;
  std::string args;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

/// Lines `name | stdin-file or - | arguments`; `#` starts a comment line.
inline std::vector<Case> load_cases(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot open " + manifest.string());
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto p1 = line.find('|');
    auto p2 = p1 == std::string::npos ? p1 : line.find('|', p1 + 1);
    if (p2 == std::string::npos) throw std::runtime_error("bad manifest line: " + line);
    Case c{trim(line.substr(0, p1)), trim(line.substr(p1 + 1, p2 - p1 - 1)), trim(line.substr(p2 + 1))};
    if (c.stdin_file == "-") c.stdin_file.clear();
    out.push_back(std::move(c));
  }
  return out;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string quoted(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

/// Runs the case from the corpus directory. The transcript is stdout, then
/// stderr under a `--- stderr` line when there is any, then `--- exit N`.
inline std::string run_case(const std::filesystem::path& binary, const std::filesystem::path& corpus, const Case& c) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("slog-golden-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path out = dir / "out", err = dir / "err";
  std::string in = c.stdin_file.empty() ? "/dev/null" : quoted(c.stdin_file);
  std::string cmd = "cd " + quoted(corpus.string()) + " && " + quoted(binary.string()) + " " + c.args + " <" + in +
                    " >" + quoted(out.string()) + " 2>" + quoted(err.string());
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::string text = slurp(out);
  std::string errors = slurp(err);
  if (!errors.empty()) text += "--- stderr\n" + errors;
  text += "--- exit " + std::to_string(code) + "\n";
  fs::remove_all(dir);
  return text;
}

}  // namespace slog::golden
