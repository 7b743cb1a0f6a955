#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "infoconv/io.hpp"
#include "support.hpp"

using namespace infoconv;
using testing::atoms;
using testing::probs;
using nlohmann::json;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("infoconv_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("spectrum serialization round trips") {
  const Spectrum s = iid_spectrum(probs({0.7, 0.3}), 5);
  CHECK(approx_equal(io::spectrum_from_json(io::to_json(s)), s, 0));
  CHECK(approx_equal(io::spectrum_from_text(io::to_text(s)), s, 0));
  CHECK(io::to_json(atoms({{0.5, 2}})).dump() == R"({"atoms":[[0.5,2]]})");
  CHECK(approx_equal(io::parse_spectrum(R"({"atoms": [[0.9, 1], [0.1, 1]]})"), probs({0.9, 0.1}), 0));
  CHECK(approx_equal(io::parse_spectrum("# comment\n0.25 4\n"), atoms({{0.25, 4}}), 0));
}

TEST_CASE("malformed spectra") {
  CHECK_THROWS_AS(io::parse_spectrum("{\"atoms\": [[0.5]]}"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_spectrum("{\"atoms\": "), InvalidArgument);
  CHECK_THROWS_AS(io::parse_spectrum("{\"p\": []}"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_spectrum("0.5 two\n"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_spectrum("0.5 1\n"), InvalidArgument);
}

TEST_CASE("amplitude matrices") {
  const double r = std::sqrt(0.5);
  const json bell = json::array({json::array({json::array({r, 0.0}), json::array({0.0, 0.0})}),
                                 json::array({json::array({0.0, 0.0}), json::array({0.0, r})})});
  const AmplitudeMatrix c = io::amplitudes_from_json(bell);
  CHECK(approx_equal(schmidt_from_amplitudes(c), atoms({{0.5, 2}}), 1e-12));
  CHECK(io::amplitudes_from_json(io::to_json(c.coefficients())).coefficients() == c.coefficients());
  CHECK_THROWS_AS(io::amplitudes_from_json(json::array({json::array({1.0}), json::array()})),
                  InvalidArgument);
  CHECK_THROWS_AS(io::amplitudes_from_json(json::object()), InvalidArgument);
  CHECK_THROWS_AS(io::amplitudes_from_json(json::array({json::array({"x"})})), InvalidArgument);
}

TEST_CASE("maps and matrices") {
  const DeterministicMap m({0, 2, 1}, 3);
  CHECK(io::to_json(m).dump() == "[0,2,1]");
  CHECK(io::map_from_json(io::to_json(m)) == m);
  CHECK(io::map_from_json(json::array({0, 0}), 4).codomain_size() == 4);
  CHECK_THROWS_AS(io::map_from_json(json::array({-1})), InvalidArgument);
  CHECK(io::to_csv(BistochasticMatrix(Eigen::MatrixXd::Identity(2, 2))) == "1,0\n0,1\n");
}

TEST_CASE("model grammar") {
  CHECK(approx_equal(io::parse_model("iid:0.9,0.1").generate(2),
                     atoms({{0.81, 1}, {0.09, 2}, {0.01, 1}}), 1e-12));
  CHECK(approx_equal(io::parse_model("maxent:R=0.2").generate(10), atoms({{0.125, 8}}), 0));
  CHECK(approx_equal(io::parse_model("maxent:0.2").generate(10), atoms({{0.125, 8}}), 0));
  CHECK(approx_equal(io::parse_model("mix:0.5*iid:0.9,0.1+0.5*iid:0.5,0.5").generate(1),
                     atoms({{0.45, 1}, {0.25, 2}, {0.05, 1}}), 1e-12));
  CHECK(approx_equal(io::parse_model("mix:5e-1*iid:0.9,0.1+5e-1*iid:1e+0").generate(1),
                     atoms({{0.5, 1}, {0.45, 1}, {0.05, 1}}), 1e-12));

  const std::string text = temp_file("spectrum.txt", "0.5 1\n0.25 2\n");
  CHECK(approx_equal(io::parse_model("file:" + text).generate(1), atoms({{0.5, 1}, {0.25, 2}}), 0));
  const std::string js = temp_file("spectrum.json", R"({"atoms": [[0.5, 2]]})");
  CHECK(approx_equal(io::parse_model("file:" + js).generate(3), atoms({{0.125, 8}}), 1e-15));
  const std::string list =
      temp_file("explicit.json", R"({"explicit": [{"atoms": [[1, 1]]}, {"atoms": [[0.5, 2]]}]})");
  CHECK(approx_equal(io::parse_model("file:" + list).generate(2), atoms({{0.5, 2}}), 0));

  CHECK_THROWS_AS(io::parse_model("gauss:1"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_model("iid:0.9,x"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_model("iid:0.9,0.2"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_model("mix:iid:0.5,0.5"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_model("file:/nonexistent/spectrum"), InvalidArgument);
}

TEST_CASE("rate output") {
  CHECK(io::unit_scale("nats") == 1.0);
  CHECK(io::unit_scale("bits") == doctest::Approx(1.0 / std::numbers::ln2));
  CHECK_THROWS_AS(io::unit_scale("hartley"), InvalidArgument);

  const std::vector<RateCurve> curves{{0.25, {{10, 0.1, 0.2}, {20, 0.15, 0.25}}},
                                      {0.1, {{10, 0.05, 0.3}, {20, 0.12, 0.28}}}};
  CHECK(io::rates_csv(curves) ==
        "n,epsilon,underline_H,overline_H\n"
        "10,0.1,0.05,0.3\n10,0.25,0.1,0.2\n20,0.1,0.12,0.28\n20,0.25,0.15,0.25\n");
  CHECK(io::to_json(curves[0], 2.0)["points"][0]["overline_H"] == 0.4);
}

TEST_CASE("experiment output") {
  const std::vector<ErrorPoint> series{{50, 0.25, 0.97, true}, {100, 0.125, 0.99, false}};
  CHECK(io::experiment_csv(series) ==
        "n,error,fidelity,nielsen_ok\n50,0.25,0.97,true\n100,0.125,0.99,false\n");
  const RateVerdict v{Task::dilution, 0.45, series};
  const json j = io::to_json(v);
  CHECK(j["task"] == "dilution");
  CHECK(j["epsilon_error_series"].size() == 2);

  const ConversionReport r = direct_convert(atoms({{0.5, 2}}), probs({0.8, 0.2}), 1);
  const json rj = io::to_json(r);
  CHECK(rj["nielsen_ok"] == true);
  CHECK(rj["certificate"].is_array());
  CHECK(io::experiment_csv(std::vector<ConversionReport>{r}).starts_with("n,error,fidelity,nielsen_ok\n1,"));
  CHECK(io::convergence_csv({{10, 0.5}}) == "n,distance\n10,0.5\n");
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(io::format_number(1e-20) == "1e-20");
}
