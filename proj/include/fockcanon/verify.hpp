#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fockcanon {

// Deterministic uniform doubles on top of mt19937_64. The engine is
// bit-exact across platforms; std::uniform_real_distribution is not, so the
// double extraction is done by hand.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  double uniform01();

private:
  std::mt19937_64 engine_;
};

struct CheckResult {
  std::string check_id;     // stable id, "<criterion><letter>"
  std::string description;
  double measured = 0.0;    // extremal defect or measured value
  double expected = 0.0;    // comparison target (0 for pure defects)
  double tolerance = 0.0;
  bool pass = false;
  // semantics: "abs" |measured-expected| <= tolerance,
  //            "rel" |measured-expected| <= tolerance*|expected|,
  //            "gt"  measured > expected (tolerance unused)
  std::string semantics = "abs";
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t nodes = 64;
  int truncation = 64;
};

// Runs the full acceptance battery; one or more CheckResults per criterion,
// check_id prefixed with the criterion number.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opt);

// Runs one criterion (1 through 10) in isolation.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opt,
                                        int criterion);  // UsageError

}  // namespace fockcanon
