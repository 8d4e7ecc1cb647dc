#ifndef ORBITSUM_TESTS_TEMPDIR_HPP
#define ORBITSUM_TESTS_TEMPDIR_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("orbitsum-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void spit(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

#endif  // ORBITSUM_TESTS_TEMPDIR_HPP
