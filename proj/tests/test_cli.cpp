#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "specrisk/cli.hpp"
#include "specrisk/spectrum.hpp"
#include "specrisk/synth.hpp"

namespace fs = std::filesystem;
using namespace specrisk;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const char* env = std::getenv("SPECRISK_TMP");
  fs::path dir = fs::path(env ? env : fs::temp_directory_path().string()) / "cli_scratch";
  fs::create_directories(dir);
  return dir;
}

std::string write_series(const std::string& name, const IndexedSeries& s) {
  const auto path = (scratch() / name).string();
  std::ofstream f(path);
  write_prices(f, to_business_days(s));
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::vector<double>> rows(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("spectrum of a constant series is zero with a warning") {
  const auto in = write_series("const.csv", fixtures::prices(std::vector<double>(30, 50.0)));
  const auto r = run({"spectrum", "--input", in, "--points-per-osc", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("omega,re,im,abs\n", 0) == 0);
  const auto table = rows(r.out);
  CHECK(table.size() == 29 * 10 + 1);
  for (const auto& row : table) {
    REQUIRE(row.size() == 4);
    CHECK(row[3] == 0.0);
  }
  CHECK(r.err.find("warning: no risk signal") != std::string::npos);
  CHECK(r.err.find("M=291") != std::string::npos);
}

TEST_CASE("spectrum of a three-day modulation peaks near 2pi/3") {
  const auto in = write_series("mod3.csv", fixtures::modulated(301, 3.0));
  const auto out = (scratch() / "mod3_spectrum.csv").string();
  const auto r = run({"spectrum", "--input", in, "--output", out, "--points-per-osc", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto table = rows(slurp(out));
  std::size_t best = 0;
  for (std::size_t j = 0; j < table.size(); ++j)
    if (table[j][3] > table[best][3]) best = j;
  const double step = kTwoPi / (300.0 * 50.0);
  CHECK(std::abs(table[best][0] - kTwoPi / 3) <= 3 * step);
  CHECK(table.back()[0] == kTwoPi);
}

TEST_CASE("spectrum structured output and curve dump") {
  const auto in = write_series("rw.csv", fixtures::random_walk(20, 3));
  const auto curve = (scratch() / "rw_curve.txt").string();
  const auto r = run({"spectrum", "--input", in, "--points-per-osc", "4", "--format", "structured",
                      "--dump-curve", curve});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("omega"));
    CHECK(j.contains("abs"));
    ++n;
  }
  CHECK(n == 19 * 4 + 1);
  CHECK(slurp(curve).rfind("p0=", 0) == 0);
}

TEST_CASE("cumulative ends at one") {
  const auto in = write_series("rw2.csv", fixtures::random_walk(40, 5));
  const auto r = run({"cumulative", "--input", in, "--points-per-osc", "20"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("omega,F,Fnorm\n", 0) == 0);
  const auto table = rows(r.out);
  CHECK(table.front()[1] == 0.0);
  CHECK(table.back()[2] == 1.0);

  const auto flat = write_series("flat.csv", fixtures::prices(std::vector<double>(10, 3.0)));
  const auto z = run({"cumulative", "--input", flat, "--points-per-osc", "5"});
  CHECK(z.code == 7);
  CHECK(z.err.find("no risk signal") != std::string::npos);
}

TEST_CASE("report in both formats and with comparisons") {
  const auto a = write_series("walk_a.csv", fixtures::random_walk(120, 11));
  const auto b = write_series("mod_b.csv", fixtures::modulated(121, 3.0));
  const auto c = write_series("exp_c.csv", fixtures::exponential(100, 0.001));

  const auto cols = run({"report", "--input", a, "--compare", b, "--compare", c,
                         "--points-per-osc", "100"});
  REQUIRE(cols.code == 0);
  std::istringstream in(cols.out);
  std::string header, row_a, row_b, row_c;
  std::getline(in, header);
  std::getline(in, row_a);
  std::getline(in, row_b);
  std::getline(in, row_c);
  CHECK(header.rfind("series,N,status,irrationality_continuous", 0) == 0);
  CHECK(header.find("share_50_1") != std::string::npos);
  CHECK(row_a.rfind("walk_a,120,", 0) == 0);
  CHECK(row_b.rfind("mod_b,121,", 0) == 0);
  CHECK(row_c.find("no risk signal") != std::string::npos);
  CHECK(cols.err.find("exp_c: no risk signal") != std::string::npos);

  const auto js = run({"report", "--input", b, "--points-per-osc", "100", "--format", "structured",
                       "--cut-days", "20", "--bands", "10:4,4:2"});
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["series"] == "mod_b");
  CHECK(doc["omega_cut_days"] == 20.0);
  REQUIRE(doc["band_shares"].size() == 2);
  CHECK(doc["band_shares"][1]["lo_days"] == 4.0);
  const double high = doc["band_shares"][1]["share"];
  CHECK(high > 0.5);  // 4:2 days holds the 3-day line
  const double irr = doc["irrationality_continuous"];
  CHECK(irr < 0.1);

  const auto two = run({"report", "--input", a, "--compare", b, "--points-per-osc", "20",
                        "--format", "structured"});
  REQUIRE(two.code == 0);
  CHECK(nlohmann::json::parse(two.out).size() == 2);
}

TEST_CASE("verify and synth") {
  const auto in = write_series("rw3.csv", fixtures::random_walk(60, 8));
  const auto v = run({"verify", "--input", in});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("samples=100 max_deviation=", 0) == 0);
  CHECK(run({"verify", "--input", in, "--samples", "10"}).code == 6);

  const auto path = (scratch() / "synth.csv").string();
  const auto s = run({"synth", "--kind", "modulated", "--n", "25", "--epsilon", "0.1", "--period",
                      "3", "--output", path});
  REQUIRE(s.code == 0);
  const auto parsed = read_prices(path);
  CHECK(parsed.size() == 25);
  const auto direct = generate(SynthSpec{SynthKind::modulated, 25, 100.0, 0.0, 0.1, 3.0});
  for (std::size_t k = 0; k < 25; ++k)
    CHECK(parsed.observations()[k].price == direct[k]);

  const auto to_stdout = run({"synth", "--kind", "constant", "--n", "3"});
  CHECK(to_stdout.out == "date,close\n2000-01-03,100\n2000-01-04,100\n2000-01-05,100\n");
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto in = write_series("rw4.csv", fixtures::random_walk(200, 31));
  std::string spectrum_ref, report_ref;
  for (const char* w : {"1", "2", "3", "8"}) {
    const auto s = run({"spectrum", "--input", in, "--points-per-osc", "30", "--workers", w});
    const auto r = run({"report", "--input", in, "--points-per-osc", "30", "--workers", w});
    REQUIRE(s.code == 0);
    REQUIRE(r.code == 0);
    if (spectrum_ref.empty()) {
      spectrum_ref = s.out;
      report_ref = r.out;
    }
    CHECK(s.out == spectrum_ref);
    CHECK(r.out == report_ref);
  }
}

TEST_CASE("error paths exit non-zero with a message") {
  const auto good = write_series("good.csv", fixtures::random_walk(30, 1));
  const auto missing = (scratch() / "does_not_exist.csv").string();

  auto expect = [](const Run& r, int code, const std::string& needle) {
    CHECK(r.code == code);
    CHECK(r.err.find(needle) != std::string::npos);
  };

  expect(run({"spectrum", "--input", missing}), 5, "does_not_exist.csv");

  const auto garbled = (scratch() / "garbled.csv").string();
  std::ofstream(garbled) << "date,close\n2020-01-02,10\n2020-01-03,ten\n";
  expect(run({"report", "--input", garbled}), 2, "line 3");

  const auto negative = (scratch() / "negative.csv").string();
  std::ofstream(negative) << "2020-01-02,10\n2020-01-03,-1\n";
  CHECK(run({"spectrum", "--input", negative}).code != 0);

  expect(run({"report", "--input", good, "--bands", "1:5"}), 6, "lo_days > hi_days");
  expect(run({"report", "--input", good, "--bands", "junk"}), 6, "junk");
  expect(run({"report", "--input", good, "--cut-days", "0.5"}), 6, "cut-days");
  expect(run({"spectrum", "--input", good, "--points-per-osc", "0"}), 6, "points-per-osc");
  expect(run({"spectrum", "--input", good, "--workers", "-2"}), 6, "workers");
  expect(run({"synth", "--kind", "brownian"}), 6, "brownian");
  expect(run({"synth", "--epsilon", "1.2", "--kind", "modulated"}), 6, "epsilon");

  CHECK(run({}).code != 0);
  CHECK(run({"spectrum"}).code != 0);
  CHECK(run({"spectrum", "--input", good, "--format", "xml"}).code != 0);
  CHECK(run({"bogus"}).code != 0);
  CHECK(run({"spectrum", "--input", good, "--output", "/nonexistent/dir/x.csv"}).code == 5);
}
