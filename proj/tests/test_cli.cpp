#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(INFOCONV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("infoconv_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("schmidt subcommand") {
  const std::string bell = temp_file(
      "bell.json", "[[[0.7071067811865476,0],[0,0]],[[0,0],[0.7071067811865476,0]]]");
  const Result r = run("schmidt " + bell);
  CHECK(r.status == 0);
  const auto atoms = nlohmann::json::parse(r.out)["atoms"];
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(atoms[0][1] == 2);

  const std::string product = temp_file("product.json", "[[1,0],[0,0]]");
  const Result p = run("schmidt " + product);
  CHECK(p.status == 0);
  CHECK(p.out == "{\"atoms\":[[1.0,1]]}\n");

  CHECK(run("schmidt " + temp_file("broken.json", "[[1,0],")).status == 2);
  CHECK(run("schmidt " + temp_file("unnormalized.json", "[[1,1],[0,0]]")).status == 2);
  CHECK(run("schmidt /nonexistent/file.json").status == 2);
}

TEST_CASE("rates subcommand") {
  const Result flat = run("rates iid:0.5,0.5 --eps 0.25 --n 10");
  CHECK(flat.status == 0);
  CHECK(flat.out == "n,epsilon,underline_H,overline_H\n10,0.25,0.6931471806,0.6931471806\n");

  const Result maxent = run("rates maxent:R=0.2 --eps 0.1 --n 10");
  CHECK(maxent.out == "n,epsilon,underline_H,overline_H\n10,0.1,0.2079441542,0.2079441542\n");

  const Result bits = run("rates iid:0.5,0.5 --eps 0.25 --n 10 --units bits");
  CHECK(bits.out == "n,epsilon,underline_H,overline_H\n10,0.25,1,1\n");

  const Result js = run("rates iid:0.5,0.5 --eps 0.1,0.25 --n 10,20 --format json");
  CHECK(js.status == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["curves"].size() == 2);
  CHECK(j["units"] == "nats");

  // Grid order on the command line does not change the canonical row order.
  CHECK(run("rates iid:0.9,0.1 --eps 0.25,0.1 --n 10").out ==
        run("rates iid:0.9,0.1 --eps 0.1,0.25 --n 10").out);
}

TEST_CASE("budget exhaustion yields partial output") {
  const Result r = run("rates iid:0.4,0.3,0.2,0.1 --n 10,400 --budget-type-classes 1000");
  CHECK(r.status == 3);
  CHECK(r.out.starts_with("n,epsilon,underline_H,overline_H\n10,"));
  CHECK(r.out.find("\n400,") == std::string::npos);

  CHECK(run("concentrate iid:0.4,0.3,0.2,0.1 --rate 0.5 --n 400 --budget-type-classes 1000").status == 3);
  CHECK(run("convert iid:0.5,0.5 iid:0.9,0.1 --n 40 --budget-type-classes 10").status == 3);
}

TEST_CASE("conversion subcommands") {
  const Result conv = run("convert iid:0.5,0.5 iid:0.8,0.2 --n 50 --format csv");
  CHECK(conv.status == 0);
  CHECK(conv.out.starts_with("n,error,fidelity,nielsen_ok\n50,"));
  CHECK(conv.out.find(",true\n") != std::string::npos);

  const Result conc = run("concentrate iid:0.9,0.1 --rate 0.2 --n 50,100");
  CHECK(conc.status == 0);
  CHECK(conc.out.starts_with("n,error,fidelity,nielsen_ok\n50,"));

  const Result dil = run("dilute iid:0.9,0.1 --rate 0.45 --n 50 --format json");
  CHECK(dil.status == 0);
  CHECK(nlohmann::json::parse(dil.out)["task"] == "dilution");

  CHECK(run("concentrate iid:0.9,0.1 --rate 0.2 --n 50,100").out == conc.out);
  CHECK(run("concentrate iid:0.9,0.1 --n 50").status == 2);
}

TEST_CASE("verify subcommand") {
  const Result np = run("verify np --trials 200 --seed 7");
  CHECK(np.status == 0);
  const auto j = nlohmann::json::parse(np.out);
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["suite"] == "np");
  CHECK(j["suites"][0]["instances"] == 200);

  CHECK(run("verify nosuch").status == 2);
  CHECK(run("verify np kh --trials 20").status == 0);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("rates").status == 2);
  CHECK(run("rates iid:0.5,0.5 --format xml").status == 2);
  CHECK(run("rates iid:0.5,0.5 --units hartley").status == 2);
  CHECK(run("rates iid:0.5,0.5 --eps 2").status == 2);
  CHECK(run("rates iid:0.5,0.5 --n 0").status == 2);
  CHECK(run("rates gauss:1").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "infoconv_cli_rates.csv";
  std::filesystem::remove(path);
  const Result r = run("rates iid:0.5,0.5 --eps 0.25 --n 10 --out " + path.string());
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::stringstream content;
  content << std::ifstream(path).rdbuf();
  CHECK(content.str() == "n,epsilon,underline_H,overline_H\n10,0.25,0.6931471806,0.6931471806\n");
}
