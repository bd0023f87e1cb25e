#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qmonty/closed_forms.hpp"
#include "qmonty/sweep.hpp"

using namespace qmonty;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "qmonty_test_sweep";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) { return cli::read_text_file(path.string()); }

SweepSpec fair_sweep(ChannelKind ch) {
  SweepSpec spec;
  spec.channel = ch;
  spec.p_grid = cli::make_grid(0.0, 1.0, 0.25);
  spec.gamma_values = {0.0, std::numbers::pi / 2};
  spec.alice = NamedStrategy::H;
  spec.bob = NamedStrategy::I;
  return spec;
}

}  // namespace

TEST_CASE("parse_angle", "[sweep][cli]") {
  CHECK(cli::parse_angle("0") == 0.0);
  CHECK(cli::parse_angle("pi/2") == std::numbers::pi / 2);
  CHECK(cli::parse_angle("pi/4") == std::numbers::pi / 4);
  CHECK(cli::parse_angle("pi") == std::numbers::pi);
  CHECK(cli::parse_angle("3*pi/8") == 3.0 * std::numbers::pi / 8);
  CHECK(cli::parse_angle(" 0.25 ") == 0.25);
  CHECK_THROWS_AS(cli::parse_angle("pi/0"), ValidationError);
  CHECK_THROWS_AS(cli::parse_angle("2pi"), ValidationError);
  CHECK_THROWS_AS(cli::parse_angle("pi*2"), ValidationError);
  CHECK_THROWS_AS(cli::parse_angle("abc"), ValidationError);
}

TEST_CASE("parse_gamma range and lists", "[sweep][cli]") {
  CHECK_THROWS_AS(cli::parse_gamma("pi"), ValidationError);
  CHECK_THROWS_AS(cli::parse_gamma("-0.1"), ValidationError);
  const auto list = cli::parse_gamma_list("pi/2,0,pi/4");
  REQUIRE(list.size() == 3);
  CHECK(list[0] == std::numbers::pi / 2);
  CHECK(list[1] == 0.0);
}

TEST_CASE("parse_double is strict", "[sweep][cli]") {
  CHECK(cli::parse_double("0.5", "p") == 0.5);
  CHECK(cli::parse_double("+1e-3", "p") == 1e-3);
  CHECK_THROWS_AS(cli::parse_double("0,5", "p"), ValidationError);
  CHECK_THROWS_AS(cli::parse_double("", "p"), ValidationError);
  CHECK_THROWS_AS(cli::parse_double("nan", "p"), ValidationError);
  CHECK_THROWS_AS(cli::parse_double("1x", "p"), ValidationError);
  CHECK_THROWS_AS(cli::parse_probability("1.5"), ValidationError);
}

TEST_CASE("p grids", "[sweep][cli]") {
  const auto g = cli::parse_p_grid("0:1:0.1");
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[3] == 3 * 0.1);

  const auto fine = figure_p_grid();
  REQUIRE(fine.size() == 101);
  CHECK(fine[50] == 0.5);
  CHECK(fine.back() == 1.0);

  CHECK(cli::parse_p_grid("0.5:0.5:0.1").size() == 1);
  CHECK(cli::parse_p_grid("0:0.95:0.1").back() == Catch::Approx(0.9));
  CHECK_THROWS_AS(cli::parse_p_grid("0:1"), ValidationError);
  CHECK_THROWS_AS(cli::parse_p_grid("0:1:0"), ValidationError);
  CHECK_THROWS_AS(cli::parse_p_grid("0.6:0.5:0.1"), ValidationError);
  CHECK_THROWS_AS(cli::parse_p_grid("0:1.5:0.1"), ValidationError);
}

TEST_CASE("parse_strategy", "[sweep][cli]") {
  CHECK(std::get<NamedStrategy>(cli::parse_strategy("M2", "alice")) == NamedStrategy::M2);
  const auto a = std::get<SU3Angles>(cli::parse_strategy("angles:0,0,pi/2,0,0,0,0,0.5", "bob"));
  CHECK(a.values[2] == std::numbers::pi / 2);
  CHECK(a.values[7] == 0.5);
  CHECK_THROWS_AS(cli::parse_strategy("angles:0,0", "bob"), ValidationError);
  CHECK_THROWS_AS(cli::parse_strategy("Q", "bob"), ValidationError);
  CHECK_THROWS_AS(cli::parse_strategy("@/nonexistent/qmonty.txt", "bob"), IoError);

  const auto path = scratch_dir() / "m1.txt";
  {
    std::ofstream out(path);
    out << "0,0 1,0 0,0\n0,0 0,0 1,0\n1,0 0,0 0,0\n";
  }
  const auto m = std::get<ComplexMatrix>(cli::parse_strategy("@" + path.string(), "alice"));
  CHECK(m == shift_m1_matrix());
  CHECK_THROWS_AS(cli::parse_matrix_text("1,0 0,0", "alice"), ValidationError);
  CHECK_THROWS_AS(cli::parse_matrix_text("1 0 0 0 1 0 0 0 1", "alice"), ValidationError);
}

TEST_CASE("parse_config_text", "[sweep][cli]") {
  const auto kv = cli::parse_config_text("# figure\nchannel = amp-damp\n  \nalice=H  # fair\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0] == std::pair<std::string, std::string>{"channel", "amp-damp"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"alice", "H"});
  CHECK_THROWS_AS(cli::parse_config_text("channel\n"), ValidationError);
}

TEST_CASE("format_number", "[sweep]") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(7.0 / 12.0) == "0.583333333333333");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("sweep rows and CSV", "[sweep]") {
  const auto spec = fair_sweep(ChannelKind::AmplitudeDamping);
  const auto rows = evaluate_sweep(spec);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].p == 0.0);
  CHECK(rows[1].gamma == std::numbers::pi / 2);
  CHECK(rows[9].p == 1.0);
  for (const auto& r : rows) CHECK_THAT(r.payoff.bob_total, WithinAbs(amp_damp_fair(r.p, r.gamma), 1e-10));

  std::ostringstream a, b;
  write_sweep_csv(a, spec, rows);
  write_sweep_csv(b, spec, evaluate_sweep(spec));
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == kCsvHeader);
  CHECK(first == "amp-damp,0,0,H,I,0,0.5,0.5,0.5");
}

TEST_CASE("sweep validation", "[sweep]") {
  auto spec = fair_sweep(ChannelKind::Dephasing);
  spec.p_grid = {0.2, 0.1};
  CHECK_THROWS_AS(evaluate_sweep(spec), ValidationError);
  spec.p_grid = {0.1};
  spec.gamma_values = {2.0};
  CHECK_THROWS_AS(evaluate_sweep(spec), ValidationError);
  spec.gamma_values = {};
  CHECK_THROWS_AS(evaluate_sweep(spec), ValidationError);
}

TEST_CASE("run_sweep writes atomically", "[sweep]") {
  const auto dir = scratch_dir();
  auto spec = fair_sweep(ChannelKind::Depolarizing);
  spec.output_path = (dir / "sweep.csv").string();
  run_sweep(spec);
  const auto first = slurp(dir / "sweep.csv");
  run_sweep(spec);
  CHECK(slurp(dir / "sweep.csv") == first);
  CHECK_FALSE(fs::exists(dir / "sweep.csv.partial"));

  spec.output_path = (dir / "missing-dir" / "sweep.csv").string();
  CHECK_THROWS_AS(run_sweep(spec), IoError);
  CHECK_FALSE(fs::exists(dir / "missing-dir" / "sweep.csv.partial"));

  const auto target = dir / "aborted.csv";
  CHECK_THROWS_AS(write_file_atomically(target.string(),
                                        [](std::ostream& out) {
                                          out << "half";
                                          throw ValidationError("stop");
                                        }),
                  ValidationError);
  CHECK_FALSE(fs::exists(target));
  CHECK_FALSE(fs::exists(dir / "aborted.csv.partial"));
}

TEST_CASE("figure presets", "[sweep]") {
  CHECK(figure_preset(1).channel == ChannelKind::AmplitudeDamping);
  CHECK(figure_preset(3).bob == NamedStrategy::M1);
  CHECK(figure_preset(4).channel == ChannelKind::Depolarizing);
  CHECK(figure_preset(5).alice == NamedStrategy::I);
  CHECK_THROWS_AS(figure_preset(0), ValidationError);
  CHECK_THROWS_AS(figure_preset(7), ValidationError);
}

TEST_CASE("figures 1 and 4 follow the closed forms", "[sweep]") {
  const auto fig1 = evaluate_figure(figure_preset(1));
  const auto fig4 = evaluate_figure(figure_preset(4));
  REQUIRE(fig1.size() == 101);
  for (std::size_t i = 0; i < fig1.size(); ++i) {
    CHECK_THAT(fig1[i].switched.bob_total, WithinAbs(amp_damp_fair(fig1[i].p, 0.0), 1e-10));
    CHECK_THAT(fig1[i].stuck.bob_total, WithinAbs(amp_damp_fair(fig1[i].p, std::numbers::pi / 2), 1e-10));
    CHECK_THAT(fig4[i].switched.bob_total, WithinAbs(depol_fair(fig4[i].p, 0.0), 1e-10));
    CHECK_THAT(fig4[i].stuck.bob_total, WithinAbs(depol_fair(fig4[i].p, std::numbers::pi / 2), 1e-10));
  }
}

TEST_CASE("figure CSV layouts", "[sweep]") {
  const auto preset = figure_preset(2);
  const auto rows = evaluate_figure(preset);
  std::ostringstream wide, flat;
  write_figure_csv(wide, rows);
  write_figure_csv_long(flat, preset, rows);
  std::istringstream w(wide.str()), l(flat.str());
  std::string line;
  std::getline(w, line);
  CHECK(line == kFigureHeader);
  std::getline(w, line);
  CHECK(line == "0,0,1");
  std::getline(l, line);
  CHECK(line == kCsvHeader);
  std::getline(l, line);
  CHECK(line == "amp-damp,0,0,I,I,0,0,0,1");
  std::size_t count = 0;
  while (std::getline(l, line)) ++count;
  CHECK(count == 201);
}
