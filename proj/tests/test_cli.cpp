#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "smlab/cli.hpp"

namespace fs = std::filesystem;
using smlab::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("smlab_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  const auto dir = scratch("usage");
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"packing", "--bogus"}).code == 2);
  CHECK(cli({"--help"}).code == 0);

  const auto missing = (dir / "nope.json").string();
  const auto r = cli({"interfere", "--config", missing});
  CHECK(r.code == 2);
  CHECK(r.err.find(missing) != std::string::npos);

  const auto unknown = write_file(dir / "u.json", R"({"R":256,"sigma":0.15,"colour":1})");
  const auto u = cli({"interfere", "--config", unknown});
  CHECK(u.code == 2);
  CHECK(u.err.find("colour") != std::string::npos);

  const auto bad = write_file(dir / "b.json", R"({"R":256,"sigma":0.2})");
  CHECK(cli({"interfere", "--config", bad}).code == 2);
  const auto big = write_file(dir / "e.json", R"({"R":256,"sigma":0.15,"eps":0.5})");
  CHECK(cli({"density", "--config", big}).code == 2);
  CHECK(cli({"packing", "--threads", "0"}).code == 2);
  CHECK(cli({"sweep", "--plot-data"}).code == 2);
}

TEST_CASE("resource cap exits with 3") {
  const auto dir = scratch("cap");
  const auto cfg = write_file(dir / "c.json", R"({"R":1e40,"sigma":0.19})");
  const auto r = cli({"interfere", "--config", cfg});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("packing and dirichlet write CSV to stdout") {
  const auto p = cli({"packing"});
  REQUIRE(p.code == 0);
  CHECK(p.out.rfind("R,point_count_bound,neighborhood_volume_bound\n", 0) == 0);

  const auto d = cli({"dirichlet", "--nmin", "16", "--nmax", "1024"});
  REQUIRE(d.code == 0);
  std::istringstream lines(d.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.find("N") == 0);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows >= 7);
  CHECK(cli({"dirichlet", "--nmin", "64", "--nmax", "16"}).code == 2);
}

TEST_CASE("subcommands write their files with 17 significant digits") {
  const auto dir = scratch("files");
  const auto cfg = write_file(dir / "c.json",
                              R"({"R":256,"sigma":0.15,"sample_count":64,"seed":3,)"
                              R"("search_budget":4})");
  const auto out = (dir / "out").string();
  CHECK(cli({"density", "--config", cfg, "--out", out}).code == 0);
  CHECK(fs::exists(fs::path(out) / "density.csv"));
  CHECK(fs::exists(fs::path(out) / "density.json"));

  const auto icfg = write_file(dir / "i.json", R"({"R":256,"sigma":0.15,"sample_count":32})");
  CHECK(cli({"interfere", "--config", icfg, "--out", out}).code == 0);
  const auto csv = slurp(fs::path(out) / "interfere.csv");
  CHECK(csv.rfind("sample,x_1,x_2,x_3,min_ratio,argmin_t\n", 0) == 0);
  // every non-integer float carries 17 significant digits or is exact in fewer
  const std::regex number(R"(-?\d+\.\d+(e[-+]\d+)?)");
  int long_numbers = 0;
  for (auto it = std::sregex_iterator(csv.begin(), csv.end(), number);
       it != std::sregex_iterator(); ++it) {
    std::string digits;
    for (char c : it->str()) {
      if (c == 'e') break;
      if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    }
    digits.erase(0, digits.find_first_not_of('0'));
    long_numbers += digits.size() == 17;
    CHECK(digits.size() <= 17);
  }
  CHECK(long_numbers > 32);
  const auto doc = nlohmann::json::parse(slurp(fs::path(out) / "interfere.json"));
  CHECK(doc.is_object());

  const auto pts = write_file(dir / "pts.csv", "x_1,x_2,x_3,t\n0,0,0,0\n0.1,0,0,0.01\n");
  CHECK(cli({"evaluate", "--config", icfg, "--points", pts, "--out", out}).code == 0);
  const auto ev = slurp(fs::path(out) / "evaluate.csv");
  CHECK(ev.rfind("x_1,x_2,x_3,t,re,im,modulus,ratio\n", 0) == 0);
  CHECK(std::count(ev.begin(), ev.end(), '\n') == 3);
  const auto badpts = write_file(dir / "bad.csv", "0,0,0\n");
  CHECK(cli({"evaluate", "--config", icfg, "--points", badpts}).code == 2);

  const auto scfg = write_file(dir / "s.json",
                               R"({"R":64,"sigma":0.15,"sample_count":64,"R_list":[64,256,1024],)"
                               R"("search_budget":4,"density_samples":128})");
  CHECK(cli({"sweep", "--config", scfg, "--out", out, "--plot-data"}).code == 0);
  CHECK(fs::exists(fs::path(out) / "sweep_loglog.dat"));
  const auto sj = nlohmann::json::parse(slurp(fs::path(out) / "sweep.json"));
  CHECK(sj.contains("fitted_exponent"));
}

TEST_CASE("output is identical at 1 and 8 threads") {
  const auto dir = scratch("threads");
  const auto plain = write_file(dir / "p.json", R"({"R":256,"sigma":0.15,"sample_count":64})");
  const auto search = write_file(dir / "s.json",
                                 R"({"R":256,"sigma":0.15,"sample_count":64,"search_budget":4})");
  for (const std::string cmd : {"interfere", "density"}) {
    const auto cfg = cmd == "interfere" ? plain : search;
    const auto a = cli({cmd, "--config", cfg, "--threads", "1"});
    const auto b = cli({cmd, "--config", cfg, "--threads", "8"});
    CAPTURE(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}
