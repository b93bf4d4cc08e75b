#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "povm/cli.hpp"
#include "povm/serialize.hpp"

#include "support.hpp"

using namespace povm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("povm_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_real round-trips doubles through text") {
    for (double x : {1.0 / 3.0, 0.1, k_pi * 1e10, -2.2250738585072014e-308, 0.0}) {
        const std::string s = format_real(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("fnv1a64 matches its published test vectors") {
    CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
    CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8Cull);
    CHECK(fnv1a64("foobar") == 0x85944171F73967E8ull);
    CHECK(hex64(0xAF63DC4C8601EC8Cull) == "af63dc4c8601ec8c");
}

TEST_CASE("config field screening") {
    const Json obj = Json{{"alpha", 1}, {"beta", 2}};
    CHECK_NOTHROW(check_keys(obj, {"alpha", "beta", "gamma"}, "ctx"));
    CHECK_THROWS_AS(check_keys(obj, {"alpha"}, "ctx"), ConfigError);
    CHECK_THROWS_AS(check_keys(Json::array(), {"alpha"}, "ctx"), ConfigError);
    CHECK_THROWS_AS(require_field(obj, "gamma", "ctx"), ConfigError);
    CHECK_THROWS_AS(as_double(Json("text"), "ctx"), ConfigError);
    CHECK(as_double(Json(2.5), "ctx") == 2.5);
}

TEST_CASE("matrices survive a serialize, dump, parse cycle bit for bit") {
    Rng rng(3);
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            m(i, j) = Complex(rng.uniform_pm1(), rng.uniform_pm1());

    const Json round = Json::parse(matrix_to_json(m).dump());
    const ComplexMatrix back = matrix_from_json(round);
    REQUIRE(back.dim() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(back(i, j) == m(i, j));

    SECTION("shape errors are config errors") {
        Json bad = matrix_to_json(m);
        bad["rows"].erase(0);
        CHECK_THROWS_AS(matrix_from_json(bad), ConfigError);
        Json extra = matrix_to_json(m);
        extra["stray"] = 1;
        CHECK_THROWS_AS(matrix_from_json(extra), ConfigError);
        CHECK_THROWS_AS(complex_from_json(Json::array({1.0}), "ctx"), ConfigError);
    }
    SECTION("csv layout") {
        const std::string csv = matrix_to_csv(m);
        CHECK(csv.rfind("row,col,re,im\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);  // header + 16 entries
    }
}

TEST_CASE("outcome sets round-trip through json") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const CircleSet x = testsupport::random_circle_set(rng);
        const CircleSet back = circle_set_from_json(Json::parse(circle_set_to_json(x).dump()));
        REQUIRE(back.intervals().size() == x.intervals().size());
        for (std::size_t i = 0; i < x.intervals().size(); ++i) {
            CHECK(back.intervals()[i].lo == x.intervals()[i].lo);
            CHECK(back.intervals()[i].hi == x.intervals()[i].hi);
        }
    }
    const RealSet r = RealSet::from_intervals({{-2.0, -1.0}, {0.25, 9.5}});
    const RealSet rback = real_set_from_json(Json::parse(real_set_to_json(r).dump()));
    CHECK(rback.measure() == r.measure());
    CHECK_THROWS_AS(circle_set_from_json(Json{{"intervals", 7}}), ConfigError);
    CHECK_THROWS_AS(real_set_from_json(Json{{"intervals", Json::array({Json::array({1.0})})}}),
                    ConfigError);
}

TEST_CASE("index schemes round-trip through json") {
    for (const Indexing& idx :
         {Indexing::nat_truncated(5), Indexing::int_truncated(0), Indexing::int_truncated(7)}) {
        CHECK(indexing_from_json(indexing_to_json(idx)) == idx);
    }
    CHECK_THROWS_AS(indexing_from_json(Json{{"kind", "half"}, {"dim", 4}}), ConfigError);
    CHECK_THROWS_AS(indexing_from_json(Json{{"kind", "nat"}, {"dim", 0}}), ConfigError);
    CHECK_THROWS_AS(indexing_from_json(Json{{"kind", "nat"}, {"order", 2}}), ConfigError);
}

TEST_CASE("generator specs round-trip through json") {
    std::vector<GeneratorSpec> specs;
    specs.push_back(ConstantGenerators{});
    specs.push_back(OrthogonalGenerators{});
    specs.push_back(RandomSeeded{42, 0.75});
    specs.push_back(ExplicitGram{build_gram(RandomSeeded{9, 0.5},
                                            Indexing::nat_truncated(3)).matrix().matrix()});
    ExplicitVectors ev;
    ev.vectors = {{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(0, 1)}};
    specs.push_back(ev);

    for (const auto& spec : specs) {
        const Json j = generator_to_json(spec);
        const GeneratorSpec back = generator_from_json(Json::parse(j.dump()));
        CHECK(generator_to_json(back).dump() == j.dump());
        CHECK(back.index() == spec.index());
    }
    CHECK_THROWS_AS(generator_from_json(Json{{"kind", "mystery"}}), ConfigError);
    CHECK_THROWS_AS(generator_from_json(Json{{"kind", "random"}, {"seed", 1}}), ConfigError);
}

TEST_CASE("line module pieces round-trip through json") {
    const LineGrid g(41, 0.25);
    CHECK(grid_from_json(grid_to_json(g)) == g);
    CHECK_THROWS_AS(grid_from_json(Json{{"n_points", 1}, {"spacing", 0.1}}), ConfigError);

    for (const DensityProfile& f :
         {DensityProfile::uniform(g, 1.0, 0.25), DensityProfile::gaussian(g, 1.0),
          DensityProfile::delta(g, 0.5)}) {
        const DensityProfile back = density_from_json(density_to_json(f), g);
        CHECK(back.kind() == f.kind());
        CHECK(back.mean() == f.mean());
        CHECK(back.variance() == f.variance());
    }
    CHECK_THROWS_AS(density_from_json(Json{{"kind", "uniform"}, {"half_width", 0.13}}, g),
                    ConfigError);
    CHECK_THROWS_AS(density_from_json(Json{{"kind", "spline"}}, g), ConfigError);

    Rng rng(8);
    const StateVector phi = testsupport::random_state(6, rng);
    const StateVector back = state_from_json(Json::parse(state_to_json(phi).dump()));
    for (std::size_t j = 0; j < 6; ++j) CHECK(back.amplitude(j) == phi.amplitude(j));
    CHECK_THROWS_AS(
        state_from_json(Json{{"amplitudes", Json::array({Json::array({0.0, 0.0})})}}),
        ConfigError);
}

TEST_CASE("moment report carries index labels") {
    const PhasePovm p(build_gram(ConstantGenerators{}, Indexing::int_truncated(1)));
    const std::string csv = moment_report_csv(p, 2);
    CHECK(csv.rfind("k,n,m,re,im\n", 0) == 0);
    CHECK(csv.find("1,-1,-1,") != std::string::npos);
    CHECK(csv.find("2,1,0,") != std::string::npos);
    // one block of dim^2 rows per moment order
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 9);
}

TEST_CASE("command dispatch honors the exit code contract") {
    const fs::path dir = fresh_dir("cli");
    const fs::path cfg = dir / "cfg.json";

    CliOptions opt;
    opt.out_dir = (dir / "out").string();

    SECTION("success is 0") {
        write_file(cfg, Json{{"indexing", {{"kind", "nat"}, {"dim", 3}}},
                             {"generator", {{"kind", "constant"}}},
                             {"sets", Json::array({Json{{"intervals",
                                                         Json::array({Json::array(
                                                             {0.0, k_pi})})}}})}}
                            .dump());
        opt.command = "build";
        opt.config_path = cfg.string();
        CHECK(run_command(opt) == 0);
        CHECK(fs::exists(dir / "out" / "summary.json"));
        CHECK(fs::exists(dir / "out" / "effect_0.json"));
        CHECK(fs::exists(dir / "out" / "moments.csv"));
        const Json summary = Json::parse(read_file(dir / "out" / "summary.json"));
        CHECK(summary.at("command") == "build");
        CHECK(summary.at("config_hash").get<std::string>().size() == 16);
    }
    SECTION("missing config file is 2") {
        opt.command = "build";
        opt.config_path = (dir / "absent.json").string();
        CHECK(run_command(opt) == 2);
    }
    SECTION("malformed json is 2") {
        write_file(cfg, "{not json");
        opt.command = "build";
        opt.config_path = cfg.string();
        CHECK(run_command(opt) == 2);
    }
    SECTION("unknown config field is 2") {
        write_file(cfg, Json{{"indexing", {{"kind", "nat"}, {"dim", 3}}},
                             {"generator", {{"kind", "constant"}}},
                             {"sets", Json::array()},
                             {"typo", true}}
                            .dump());
        opt.command = "build";
        opt.config_path = cfg.string();
        CHECK(run_command(opt) == 2);
    }
    SECTION("unknown command is 2") {
        opt.command = "mystery";
        CHECK(run_command(opt) == 2);
    }
    SECTION("seed override on a non-random generator is 2") {
        write_file(cfg, Json{{"indexing", {{"kind", "nat"}, {"dim", 3}}},
                             {"generator", {{"kind", "constant"}}},
                             {"sets", Json::array({Json{{"intervals",
                                                         Json::array({Json::array(
                                                             {0.0, k_pi})})}}})}}
                            .dump());
        opt.command = "build";
        opt.config_path = cfg.string();
        opt.seed = 5;
        CHECK(run_command(opt) == 2);
    }
    SECTION("scientific invariant violation is 1") {
        // explicit gram with unit diagonal and bounded entries whose sign
        // pattern is indefinite; passes parsing, fails validation
        ComplexMatrix g = ComplexMatrix::identity(3);
        const double v = 0.9;
        g(0, 1) = g(1, 0) = Complex(v, 0.0);
        g(1, 2) = g(2, 1) = Complex(v, 0.0);
        g(0, 2) = g(2, 0) = Complex(-v, 0.0);
        write_file(cfg, Json{{"indexing", {{"kind", "nat"}, {"dim", 3}}},
                             {"generator", {{"kind", "gram"}, {"matrix", matrix_to_json(g)}}},
                             {"sets", Json::array({Json{{"intervals",
                                                         Json::array({Json::array(
                                                             {0.0, k_pi})})}}})}}
                            .dump());
        opt.command = "build";
        opt.config_path = cfg.string();
        CHECK(run_command(opt) == 1);
    }
}

TEST_CASE("dilemma report is deterministic byte for byte") {
    const fs::path dir = fresh_dir("det");
    const fs::path cfg = dir / "cfg.json";
    write_file(cfg,
               Json{{"indexing", {{"kind", "nat"}, {"dim", 6}}},
                    {"generator", {{"kind", "random"}, {"seed", 11}, {"blend", 0.7}}},
                    {"sets", Json::array({Json{{"intervals", Json::array({Json::array(
                                                                 {0.0, k_pi})})}},
                                          Json{{"intervals", Json::array({Json::array(
                                                                 {1.0, 2.5})})}}})},
                    {"shifts", Json::array({1.25})},
                    {"states", {{"kind", "random"}, {"count", 2}, {"seed", 3}}},
                    {"window", 4}}
                   .dump());

    CliOptions opt;
    opt.command = "dilemma-report";
    opt.config_path = cfg.string();
    opt.out_dir = (dir / "a").string();
    REQUIRE(run_command(opt) == 0);
    opt.out_dir = (dir / "b").string();
    REQUIRE(run_command(opt) == 0);

    const std::string a = read_file(dir / "a" / "dilemma_report.json");
    const std::string b = read_file(dir / "b" / "dilemma_report.json");
    CHECK(a == b);
    CHECK(!a.empty());

    SECTION("and the seed override changes the hash but stays valid") {
        opt.out_dir = (dir / "c").string();
        opt.seed = 12;
        REQUIRE(run_command(opt) == 0);
        const std::string c = read_file(dir / "c" / "dilemma_report.json");
        CHECK(c != a);
        const Json ja = Json::parse(a);
        const Json jc = Json::parse(c);
        CHECK(ja.at("config_hash") != jc.at("config_hash"));
    }
}
