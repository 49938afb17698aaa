#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "dgbo/errors.hpp"
#include "dgbo/io.hpp"
#include "dgbo/spectral.hpp"

using namespace dgbo;
namespace fs = std::filesystem;

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 2e-17, -123456.789, 6.283185307179586}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("config hash is canonical and order-insensitive") {
    const nlohmann::json a{{"alpha", 1}, {"beta", 2.5}};
    const nlohmann::json b{{"beta", 2.5}, {"alpha", 1}};
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    const nlohmann::json c{{"alpha", 1}, {"beta", 2.5000001}};
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("identity report serializes to exactly the six residual keys") {
    IdentityReport rep;
    rep.residual_c1 = 1e-8;
    rep.residual_pohozaev = 2e-7;
    const nlohmann::json j = to_json(rep);
    CHECK(j.size() == 6);
    CHECK(j.contains("residual_c1"));
    CHECK(j.contains("residual_c2"));
    CHECK(j.contains("residual_c3"));
    CHECK(j.contains("residual_c4"));
    CHECK(j.contains("residual_pohozaev"));
    CHECK(j.contains("residual_EQ"));
    CHECK(j["residual_pohozaev"].get<double>() == 2e-7);
}

TEST_CASE("threshold report json carries raw and log-scale values") {
    ThresholdReport rep;
    rep.s_k = 0.3;
    rep.lhs_energy_mass = 1e12;
    rep.rhs_energy_mass = 2e12;
    rep.lhs_gradient_mass = 0.0;
    rep.rhs_gradient_mass = 3.0;
    rep.x0 = 4.0;
    rep.f_x0 = 2.4;
    rep.admissible = true;
    rep.energy_nonneg = true;
    const nlohmann::json j = to_json(rep);
    CHECK(j["log10_lhs_energy_mass"].get<double>() == doctest::Approx(12.0));
    CHECK(j["log10_lhs_gradient_mass"].is_null());  // log of zero
    CHECK(j["trajectory_ok"].is_null());
    CHECK(j["admissible"].get<bool>());
}

TEST_CASE("profile csv round trip") {
    const GridPtr g = make_grid(64, 25.0);
    Eigen::ArrayXd s = (-(g->x() / 2.0).square()).exp();
    const Field f(g, s);
    const ModelParams p(1.5, 4);

    const fs::path path = fs::temp_directory_path() / "dgbo_test_profile.csv";
    write_profile_csv(path, f, p, "deadbeefdeadbeef");
    const LoadedProfile lp = read_profile_csv(path);
    fs::remove(path);

    CHECK(lp.params.beta == 1.5);
    CHECK(lp.params.k == 4);
    CHECK(lp.cfg_hash == "deadbeefdeadbeef");
    CHECK(lp.field.grid()->n_points() == 64);
    CHECK(lp.field.grid()->length() == 25.0);
    CHECK((lp.field.samples() - s).abs().maxCoeff() == 0.0);  // g17 round-trip
}

TEST_CASE("profile loader rejects malformed files") {
    const fs::path path = fs::temp_directory_path() / "dgbo_bad_profile.csv";
    write_text_file(path, "not a profile\n");
    CHECK_THROWS_AS(read_profile_csv(path), ConfigError);
    fs::remove(path);
    CHECK_THROWS_AS(read_profile_csv("/nonexistent/nowhere.csv"), ConfigError);
}

TEST_CASE("trajectory csv layout") {
    TrajectoryRecord rec;
    rec.times = {0.0, 0.5};
    rec.conserved = {{1.0, -0.25, 0.7}, {1.0000000001, -0.2500001, 0.70001}};
    rec.linf = {2.0, 1.99};
    const std::string csv = trajectory_csv_string(rec, "0123456789abcdef");
    CHECK(csv.rfind("# dgbo trajectory v1\n", 0) == 0);
    CHECK(csv.find("config_hash=0123456789abcdef") != std::string::npos);
    CHECK(csv.find("t,mass,energy,h_half_beta,linf\n") != std::string::npos);
    CHECK(csv.find("0.5,1.0000000001") != std::string::npos);
}
