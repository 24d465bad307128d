// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "nldiff/verify/verify.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "nldiff_acceptance";
  nldiff::verify::VerifyOptions options;
  for (int i = 2; i < argc; ++i) options.only.push_back(std::stoi(argv[i]));
  options.on_result = [](const nldiff::verify::CriterionResult& r) {
    std::printf("%s\n", nldiff::verify::format_result_line(r).c_str());
    std::fflush(stdout);
  };
  const auto results = nldiff::verify::run_verification(out, options);
  const bool ok = nldiff::verify::all_passed(results);
  std::printf("%s: %zu criteria, output in %s\n", ok ? "ALL PASS" : "FAILURES", results.size(),
              out.string().c_str());
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
