#include <doctest.h>

#include <cmath>

#include "chaostrack/config.hpp"

using namespace chaostrack;

TEST_CASE("parse_config: empty document resolves to the documented defaults") {
    const RunConfig cfg = parse_config("", {});
    CHECK(cfg.v0 == 5.0);
    CHECK(cfg.omega_b == 0.25);
    CHECK(cfg.chi00 == 2.0);
    CHECK(cfg.x1 == 0.1);
    CHECK(cfg.x2 == 0.01);
    CHECK(cfg.ic_i_0 == 0.65);
    CHECK(cfg.ic_i_1 == 0.25);
    CHECK(cfg.spectral_samples == 8192);
    CHECK(cfg.spectral_dt_sample == 0.4);
    CHECK(cfg.spectral_threshold == 0.01);
    CHECK(cfg.format == "csv");
    // chi01 resolves from the Wannier function at v0 = 5
    CHECK(cfg.chi01_auto);
    CHECK(cfg.chi01 > 0.004);
    CHECK(cfg.chi01 < 0.010);
}

TEST_CASE("parse_config: flags win over the file") {
    const RunConfig cfg = parse_config("g = 0.25\n", {{"g", "0.3"}});
    CHECK(cfg.g == 0.3);

    const RunConfig file_only = parse_config("g = 0.25\n", {});
    CHECK(file_only.g == 0.25);
}

TEST_CASE("parse_config: comments, blanks, and whitespace") {
    const std::string text =
        "# a comment\n"
        "\n"
        "  g   =  0.12   # trailing comment\n"
        "spectral.window = none\n";
    const RunConfig cfg = parse_config(text, {});
    CHECK(cfg.g == 0.12);
    CHECK(cfg.spectral_window == "none");
}

TEST_CASE("parse_config: errors carry the line and the field") {
    try {
        parse_config("g = 0.1\nbogus_key = 3\n", {});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    CHECK_THROWS_AS(parse_config("g = not_a_number\n", {}), ParseError);
    CHECK_THROWS_AS(parse_config("g 0.1\n", {}), ParseError);
    CHECK_THROWS_AS(parse_config("sweep.count = 2.5\n", {}), ParseError);

    try {
        parse_config("chi00 = -1\n", {});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field == "chi00");
    }

    CHECK_THROWS_AS(parse_config("spectral.window = hamming\n", {}), ValidationError);
    CHECK_THROWS_AS(parse_config("ic.i_1 = 0.9\n", {}), ValidationError);
    CHECK_THROWS_AS(parse_config("jobs = 0\n", {}), ValidationError);
}

TEST_CASE("chi01: explicit value switches off the Wannier resolution") {
    const RunConfig cfg = parse_config("chi01 = 0.05\n", {});
    CHECK_FALSE(cfg.chi01_auto);
    CHECK(cfg.chi01 == 0.05);

    const RunConfig back = parse_config("chi01 = auto\n", {});
    CHECK(back.chi01_auto);
}

TEST_CASE("resolved_entries covers every key needed to rerun") {
    const RunConfig cfg = parse_config("g = 0.2\n", {});
    const auto entries = cfg.resolved_entries();
    auto find = [&](const std::string& key) -> std::string {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        return "<missing>";
    };
    CHECK(find("g") == "0.2");
    CHECK(find("chi01.source") == "auto");
    CHECK(find("spectral.window") == "hann");
    CHECK(find("sweep.count") == "151");
    CHECK(find("kr.kbar") == "2.89");
    CHECK(find("criticalg.lambda_floor") == "0.01");
    CHECK(find("wannier.pps") == "64");
}

TEST_CASE("lattice() and initial_state() reflect the resolved config") {
    RunConfig cfg = parse_config("g = 0.05\nchi01 = 0.05\n", {});
    const LatticeParams p = cfg.lattice();
    CHECK(p.g == 0.05);
    CHECK(p.chi01 == 0.05);

    const ModeState s = cfg.initial_state();
    CHECK(s.normalized());
    CHECK(s.population(0) == doctest::Approx(0.65));
    CHECK(s.population(1) == doctest::Approx(0.25));
    CHECK(s.phase(1) == doctest::Approx(3.14159265358979).epsilon(1e-10));
}
