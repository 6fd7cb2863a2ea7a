#include "qbus/scenario.hpp"
#include "qbus/validate.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qbus;

namespace {

ScenarioOptions small_opts() {
    ScenarioOptions o;
    o.t_steps = 41;
    o.t_max = 80.0;
    return o;
}

}  // namespace

TEST_CASE("figure presets: shape and trivial rows") {
    for (int fig : {2, 4, 5, 6, 7}) {
        const auto c = run_figure(fig, small_opts());
        CHECK(c.names.size() == 3);
        CHECK(c.abscissa.size() == 41);
        CHECK(c.abscissa.front() == 0.0);
        for (const auto& s : c.series) {
            REQUIRE(s.size() == c.abscissa.size());
            for (double v : s) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
        if (fig == 2)
            for (const auto& s : c.series) CHECK(s.front() == 1.0);  // F(t=0)
        if (fig == 4 || fig == 5)
            for (const auto& s : c.series) CHECK(s.front() == 0.5);  // overlap at t=0
        if (fig == 6 || fig == 7)
            for (const auto& s : c.series) CHECK(s.front() < 1e-12);  // product state
    }
    const auto f3 = run_figure(3, small_opts());
    CHECK(f3.meta.at("abscissa") == "m");
    CHECK(f3.names.size() == 3);
    CHECK_THROWS_AS(run_figure(8, small_opts()), Error);
}

TEST_CASE("zero coupling pins the metrics") {
    ScenarioOptions o = small_opts();
    o.params.g = 0.0;
    const auto fid = curve_fidelity(o, 0, CavityPrep::coherent(1.1));
    for (double v : fid.series[0]) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    const auto conc = curve_concurrence_coherent(o, 1.1, ConcurrenceMode::Wootters);
    for (double v : conc.series[0]) CHECK(v < 1e-12);
}

TEST_CASE("thermal betaE=6 approaches the vacuum curve") {
    ScenarioOptions o = small_opts();
    const auto warm = curve_concurrence_thermal(o, 6.0, ConcurrenceMode::Wootters);
    ModelParams p0 = o.params.with_cutoff(4);
    double gap = 0.0;
    for (std::size_t i = 0; i < warm.abscissa.size(); ++i) {
        const double vac = concurrence_coherent(0.0, warm.abscissa[i], p0, o.form,
                                                ConcurrenceMode::Wootters);
        gap = std::max(gap, std::abs(warm.series[0][i] - vac));
    }
    MESSAGE("max gap between betaE=6 and the vacuum curve: ", gap);
    CHECK(gap < 0.05);  // close, though not yet the betaE -> inf limit
}

TEST_CASE("csv writer: determinism and 17-digit round trip") {
    MetricCurve c;
    c.abscissa = {0.0, 1.0 / 3.0, 0.2 + 1e-17};
    c.names = {"a", "b"};
    c.series = {{0.1234567890123456789, 1.0, 2.0}, {3.0, 4.0, 5.0e-300}};
    c.meta["omega"] = "1";

    const std::string once = csv_string(c);
    CHECK(once == csv_string(c));
    CHECK(once.substr(0, once.find('\n')) == "abscissa,a,b");
    CHECK(once.find("\r") == std::string::npos);

    // parse back every float and compare bitwise
    std::istringstream in(once);
    std::string line;
    std::getline(in, line);  // header
    for (int row = 0; std::getline(in, line); ++row) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x, a, b;
        ls >> x >> a >> b;
        CHECK(x == c.abscissa[row]);
        CHECK(a == c.series[0][row]);
        CHECK(b == c.series[1][row]);
    }

    const auto path = std::filesystem::temp_directory_path() / "qbus_csv_test.csv";
    write_csv(c, path);
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(path.string() + ".meta.json"));
    std::ifstream f(path);
    std::string head;
    std::getline(f, head);
    CHECK(head == "abscissa,a,b");
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".meta.json");
}

TEST_CASE("derive report") {
    const ModelParams p{};
    const auto j = derive_report(p, EffectiveForm::rwa(), true);
    CHECK(j["delta"]["plus"].get<double>() == doctest::Approx(3.125).epsilon(1e-15));
    CHECK(j["delta"]["minus"].get<double>() == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(j["coupling_resolution"]["resolved_sign"].get<int>() == -1);
    CHECK(j["coupling_resolution"]["magnitude_ratio_vs_printed"].get<double>() ==
          doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(j.contains("blocks_printed"));

    // round trip: parse(print(x)) == x
    const std::string text = j.dump(2);
    CHECK(ordered_json::parse(text).dump(2) == text);

    // omega_j = 0: Delta- vanishes and the sector shift is n-independent
    ModelParams pj = p;
    pj.omega_j = 0.0;
    CHECK(derive_report(pj, EffectiveForm::rwa(), false)["delta"]["minus"].get<double>() == 0.0);
    CHECK(block_terms(0, pj, EffectiveForm::rwa()).sz_coeff ==
          block_terms(5, pj, EffectiveForm::rwa()).sz_coeff);
}

TEST_CASE("effective cutoff selection") {
    ScenarioOptions o;
    const auto prep = CavityPrep::coherent(1.1);
    const int autoN = effective_cutoff(prep, o);
    CHECK(autoN == min_cutoff(prep));
    CHECK(autoN >= 10);  // mean 1.21 with a 1e-10 tail needs this much room
    o.cutoff_override = autoN + 8;
    CHECK(effective_cutoff(prep, o) == autoN + 8);
}

TEST_CASE("evolution curve: protected subspace stays pure in the output") {
    ScenarioOptions o = small_opts();
    const auto c = curve_evolution(o, CavityPrep::thermal(2.0), Vector4c::Unit(1));
    const auto& purity_col = c.series[4];
    for (double v : purity_col) CHECK(std::abs(v - 1.0) < 1e-10);
}
