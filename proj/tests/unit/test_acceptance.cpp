#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "trisect/acceptance.hpp"
#include "trisect/io.hpp"

using namespace trisect;

TEST_CASE("perturbed fixture fails the named criterion") {
  auto dir = std::filesystem::temp_directory_path() / "trisect_perturbed";
  std::filesystem::create_directories(dir);
  auto fx = ojson::parse(read_file(default_fixture_dir() + "/kashaev_cp2.json"));
  fx["4"]["value"]["coeffs"][1] = "1/3";
  std::ofstream((dir / "kashaev_cp2.json").string()) << fx.dump(2);
  SuiteOptions opt;
  opt.fixture_dir = dir.string();
  opt.only = {11};
  auto rs = run_suite(opt);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].id == 11);
  CHECK_FALSE(rs[0].ok);
  CHECK(rs[0].detail.find("n=4") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cheap criteria pass and are deterministic") {
  SuiteOptions opt;
  opt.only = {6, 10};
  auto a = run_suite(opt), b = run_suite(opt);
  REQUIRE(a.size() == 2);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ok);
    CHECK(a[i].detail == b[i].detail);
    CHECK(a[i].checks == b[i].checks);
  }
}
