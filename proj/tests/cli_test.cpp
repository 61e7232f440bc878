#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qntt/serialize.hpp"

using qntt::Json;

namespace {

struct CliResult {
  int exit_code;
  std::string out; // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(QNTT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "qntt_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream f(path);
  f << text;
  return path.string();
}

} // namespace

TEST_CASE("params: generation, exit codes, round trip") {
  auto ok = run_cli("params --m 17 --n 4 --a 1");
  CHECK(ok.exit_code == 0);
  Json doc = Json::parse(ok.out);
  CHECK(doc["m"] == 17);
  CHECK(doc["a"] == 1);
  CHECK(doc["alpha"] == 1);
  CHECK((doc["omega"] == 4 || doc["omega"] == 13));
  // output round-trips through its own parser
  auto parsed = qntt::params_from_json(doc);
  CHECK(qntt::params_to_json(parsed) == doc);

  // default a = -1: alpha^n = -1 and omega has order n in the document
  auto neg = run_cli("params --m 1649 --n 8");
  REQUIRE(neg.exit_code == 0);
  Json nd = Json::parse(neg.out);
  CHECK(nd["a"] == 1648);
  qntt::u64 alpha = nd["alpha"], omega = nd["omega"];
  CHECK(qntt::mod_pow(alpha, 8, 1649) == 1648);
  CHECK(qntt::mod_pow(omega, 8, 1649) == 1);
  CHECK(qntt::mod_pow(omega, 4, 1649) == 1648);
  CHECK(nd["points"].size() == 8);

  auto infeasible = run_cli("params --m 65 --n 4");
  CHECK(infeasible.exit_code == 2);
  CHECK(infeasible.out.find("p=5") != std::string::npos);

  CHECK(run_cli("params --n 4").exit_code == 1);       // no modulus
  CHECK(run_cli("params --m 16 --n 4").exit_code == 1); // even modulus
  CHECK(run_cli("params --m 17 --n 3").exit_code == 1); // n not a power of two
}

TEST_CASE("params: seeds are reproducible and QNTT_SEED is the fallback") {
  auto a = run_cli("params --m 1649 --n 8 --seed 5");
  auto b = run_cli("params --m 1649 --n 8 --seed 5");
  CHECK(a.out == b.out);

  auto env_run = [](const std::string& env, const std::string& args) {
    std::string cmd =
        env + " " + std::string(QNTT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
      out.append(buf.data(), n);
    pclose(pipe);
    return out;
  };
  CHECK(env_run("QNTT_SEED=5", "params --m 1649 --n 8") == a.out);
  // explicit --seed beats the environment
  CHECK(env_run("QNTT_SEED=7", "params --m 1649 --n 8 --seed 5") == a.out);
}

TEST_CASE("mul: algorithm-independent output") {
  auto params = run_cli("params --m 1649 --n 8 --d 4");
  REQUIRE(params.exit_code == 0);
  auto params_path = write_file("p_d4.json", params.out);
  auto g_path = write_file(
      "g.json", R"({"m": 1649, "coeffs": [3, 1, 4, 1, 5, 9, 2, 6]})");
  auto h_path = write_file(
      "h.json", R"({"m": 1649, "coeffs": [2, 7, 1, 8, 2, 8, 1, 8]})");

  std::string base = "mul --params " + params_path + " --g " + g_path +
                     " --h " + h_path + " --algo ";
  auto school = run_cli(base + "schoolbook");
  REQUIRE(school.exit_code == 0);
  for (const char* algo : {"karatsuba", "partial", "crt"}) {
    auto r = run_cli(base + algo);
    CHECK(r.exit_code == 0);
    CHECK(r.out == school.out); // byte-for-byte
  }
  // d < n plan cannot drive the full-split transform
  CHECK(run_cli(base + "fft").exit_code == 2);

  SUBCASE("full split runs all five") {
    auto full = run_cli("params --m 1649 --n 8");
    auto full_path = write_file("p_full.json", full.out);
    std::string cmd = "mul --params " + full_path + " --g " + g_path +
                      " --h " + h_path + " --algo ";
    auto expect = run_cli(cmd + "schoolbook");
    for (const char* algo : {"karatsuba", "fft", "partial", "crt"}) {
      auto r = run_cli(cmd + algo);
      CHECK(r.exit_code == 0);
      CHECK(r.out == expect.out);
    }
  }
  SUBCASE("unit polynomial is neutral") {
    auto unit_path = write_file(
        "unit.json", R"({"m": 1649, "coeffs": [1, 0, 0, 0, 0, 0, 0, 0]})");
    auto r = run_cli("mul --params " + params_path + " --g " + g_path +
                     " --h " + unit_path + " --algo partial");
    REQUIRE(r.exit_code == 0);
    auto [poly, m] = qntt::poly_from_json(Json::parse(r.out));
    CHECK(poly == qntt::Poly{3, 1, 4, 1, 5, 9, 2, 6});
  }
  SUBCASE("input errors exit 1") {
    CHECK(run_cli("mul --params /nonexistent.json --g " + g_path + " --h " +
                  h_path + " --algo fft")
              .exit_code == 1);
    auto wrong_m = write_file("wrongm.json", R"({"m": 13, "coeffs": [1]})");
    CHECK(run_cli("mul --params " + params_path + " --g " + wrong_m +
                  " --h " + h_path + " --algo schoolbook")
              .exit_code == 1);
    auto too_long = write_file(
        "long.json", R"({"m": 1649, "coeffs": [1,2,3,4,5,6,7,8,9]})");
    CHECK(run_cli("mul --params " + params_path + " --g " + too_long +
                  " --h " + h_path + " --algo schoolbook")
              .exit_code == 1);
  }
}

TEST_CASE("check: the Z_65 counterexample and a generated set") {
  auto r = run_cli("check --m 65 --points 12,14,18,21 --a 1 --d 4");
  REQUIRE(r.exit_code == 0);
  Json rep = Json::parse(r.out);
  CHECK(rep["cond1"] == true);
  CHECK(rep["cond2"] == true);
  CHECK(rep["cond3_some_ordering"] == false);
  CHECK(rep["cond4"] == false);

  auto good = run_cli("check --m 13 --points 1,5,12,8 --a 1 --d 4");
  Json grep = Json::parse(good.out);
  CHECK(grep["cond1"] == true);
  CHECK(grep["cond2"] == true);
  CHECK(grep["cond3_some_ordering"] == true);
  CHECK(grep["cond4"] == true);
  CHECK(grep["witnesses"]["cond4"]["omega"] == 5);

  auto single = run_cli("check --m 13 --points 6 --a 6 --d 1");
  Json srep = Json::parse(single.out);
  CHECK(srep["cond1"] == true);
  CHECK(srep["cond2"] == true);
  CHECK(srep["cond3_some_ordering"] == true);
  CHECK(srep["cond4"] == true);

  CHECK(run_cli("check --m 65 --points 1,2,3 --a 1").exit_code == 1);
}

TEST_CASE("factor: fixed splits and congruence failures") {
  auto r = run_cli("factor --m 5 --n 8 --d 2");
  REQUIRE(r.exit_code == 0);
  Json f = Json::parse(r.out);
  CHECK(f["n"] == 8);
  CHECK(f["d"] == 2);
  std::vector<qntt::u64> alphas = {f["alphas"][0], f["alphas"][1]};
  std::sort(alphas.begin(), alphas.end());
  CHECK(alphas == std::vector<qntt::u64>{2, 3});

  auto r13 = run_cli("factor --m 13 --n 8 --d 2");
  Json f13 = Json::parse(r13.out);
  std::vector<qntt::u64> a13 = {f13["alphas"][0], f13["alphas"][1]};
  std::sort(a13.begin(), a13.end());
  CHECK(a13 == std::vector<qntt::u64>{5, 8});

  auto bad = run_cli("factor --m 65 --n 8 --d 4");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("p=5") != std::string::npos);
}

TEST_CASE("large moduli serialize as decimal strings") {
  auto r = run_cli("params --factors 983203841,1172832257 --n 4 --a 1");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["m"].is_string()); // >= 2^53
  CHECK(doc["factors"][0][0].is_number());
  auto parsed = qntt::params_from_json(doc);
  CHECK(parsed.m.value() == 1153133179931099137ull);
  CHECK(qntt::params_to_json(parsed) == doc);
}

TEST_CASE("enumerate surfaces the counting results") {
  auto r = run_cli("enumerate --m 17 --n 4 --a 1");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["twofold_invdiff"] == 1);
  CHECK(j["alpha_omega"] == 1);

  auto r65 = run_cli("enumerate --m 65 --n 4 --a 1");
  Json j65 = Json::parse(r65.out);
  CHECK(j65["twofold_invdiff"] == j65["alpha_omega"]);
}

TEST_CASE("bench CSV contract") {
  // a = 1 so the full split exists up to n = 16 over 1649 (16 | p-1 for both)
  auto params = run_cli("params --m 1649 --n 8 --a 1 --d 2");
  auto params_path = write_file("bench_p.json", params.out);
  auto csv_path = (scratch_dir() / "bench.csv").string();

  auto r = run_cli("bench --params " + params_path +
                   " --sizes 8,16 --trials 1 --algos schoolbook,fft,partial"
                   " --out " + csv_path);
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "algo,m,n,d,trials,mean_ns,p50_ns,p95_ns");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6); // 3 algos x 2 sizes, size-major order
  CHECK(rows[0].rfind("schoolbook,1649,8,0,1,", 0) == 0);
  CHECK(rows[1].rfind("fft,1649,8,8,1,", 0) == 0);
  CHECK(rows[2].rfind("partial,1649,8,2,1,", 0) == 0);
  CHECK(rows[3].rfind("schoolbook,1649,16,0,1,", 0) == 0);
  CHECK(rows[4].rfind("fft,1649,16,16,1,", 0) == 0);
  CHECK(rows[5].rfind("partial,1649,16,2,1,", 0) == 0);
  // trials = 1 forces mean = p50 = p95
  for (const std::string& row : rows) {
    std::stringstream ss(row);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 8);
    CHECK(fields[5] == fields[6]);
    CHECK(fields[6] == fields[7]);
  }
  // --out wrote the same CSV
  std::ifstream file(csv_path);
  std::stringstream file_text;
  file_text << file.rdbuf();
  CHECK(file_text.str() == r.out);

  SUBCASE("a size without valid parameters exits 2") {
    // the full split at n = 32 needs an order-32 root of unity: 32 | 16 fails
    auto bad = run_cli("bench --params " + params_path +
                       " --sizes 32 --trials 1 --algos fft --out /dev/null");
    CHECK(bad.exit_code == 2);
  }
}
