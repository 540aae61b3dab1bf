#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("cli: m-bound endpoint in json") {
  const auto res = run_cli("m-bound --d 5 --delta -1.6094379124341003");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"value\": 1.60943791243") != std::string::npos);
  CHECK(res.output.find("\"status\": \"Finite\"") != std::string::npos);
}

TEST_CASE("cli: infinity serialization") {
  const auto js = run_cli("m-bound --d 2 --delta 0.69314718055994531");
  CHECK(js.exit_code == 0);
  CHECK(js.output.find("\"value\": \"inf\"") != std::string::npos);
  CHECK(js.output.find("\"status\": \"Infinite\"") != std::string::npos);
  const auto csv = run_cli("m-bound --d 2 --delta 0.69314718055994531 --format csv");
  CHECK(csv.output.find(",inf,") != std::string::npos);
}

TEST_CASE("cli: bits spot check") {
  const auto res = run_cli("m-bound --d 2 --delta -0.69314718055994531 --units bits");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"value\": 1,") != std::string::npos);
  CHECK(res.output.find("\"delta\": -1,") != std::string::npos);
}

TEST_CASE("cli: deterministic output") {
  const std::string args = "verify --samples 50 --seed 7 --format csv";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output != run_cli("verify --samples 50 --seed 8 --format csv").output);
}

TEST_CASE("cli: channel files") {
  const std::string csv_path = "/tmp/entrobound_test_chan.csv";
  {
    std::ofstream f(csv_path);
    f << "y0,y1\n0.9,0.1\n0.2,0.8\n";
  }
  const auto res = run_cli("capacity --channel " + csv_path + " --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("capacity,bound") != std::string::npos);

  const std::string json_path = "/tmp/entrobound_test_chan.json";
  {
    std::ofstream f(json_path);
    f << "{\"matrix\": [[0.9,0.1],[0.2,0.8]]}";
  }
  const auto jres = run_cli("capacity --channel " + json_path);
  CHECK(jres.exit_code == 0);
  // the two formats describe the same channel
  const auto cres = run_cli("capacity --channel " + csv_path);
  CHECK(jres.output == cres.output);
}

TEST_CASE("cli: malformed input fails loudly") {
  const std::string bad = "/tmp/entrobound_test_bad.csv";
  {
    std::ofstream f(bad);
    f << "0.9,0.3\n0.2,0.8\n";
  }
  CHECK(run_cli("capacity --channel " + bad).exit_code != 0);
  CHECK(run_cli("capacity --channel /tmp/entrobound_nonexistent.csv").exit_code != 0);
  CHECK(run_cli("m-bound --d 2 --delta 5.0").exit_code != 0);
  CHECK(run_cli("m-bound --d 2").exit_code != 0);
  CHECK(run_cli("chernoff --p 0.5,0.5 --q 0.5,0.6").exit_code != 0);
}

TEST_CASE("cli: figure output shape") {
  const auto res = run_cli("figure");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("d,delta,M,exp_bound_Nd,cubic_bound_Nd,quad_bound,pinsker_fa") == 0);
  CHECK(res.output.find("\nd,N,N_closed,N_closed_minus_1\n") != std::string::npos);
  // 3 dimensions x 401 points + 99 variance rows + 2 headers + blank line
  std::size_t lines = 0;
  for (char c : res.output)
    if (c == '\n') ++lines;
  CHECK(lines == 3 * 401 + 99 + 3);
  const auto out = run_cli("figure --out /tmp/entrobound_fig.csv");
  CHECK(out.exit_code == 0);
  std::ifstream f("/tmp/entrobound_fig.csv");
  CHECK(f.good());
}

TEST_CASE("cli: work and process plumbing") {
  const auto wk = run_cli("work --rho 1,0 --levels 0,0 --temperature 2");
  CHECK(wk.exit_code == 0);
  CHECK(wk.output.find("\"exact\": 1.38629436112") != std::string::npos);
  const auto pr = run_cli("process --rho-i 0.9,0.1 --rho-f 0.5,0.5 --k 8 --format csv");
  CHECK(pr.exit_code == 0);
  CHECK(pr.output.find("clausius_lhs") != std::string::npos);
}
