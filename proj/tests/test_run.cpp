#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "testutil.hpp"
#include "warpcheck/metric_file.hpp"
#include "warpcheck/run.hpp"
#include "warpcheck/errors.hpp"

using namespace warpcheck;
using namespace warpcheck::cli;
using testutil::close;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

const char* kCase1Toml = R"toml([metric]
epsilon = 0.1

[[factor]]
dim = 2
sec_curv = 1
label = "S2"
warp = "1/(1 + t^4)"

[[factor]]
dim = 1
sec_curv = 0
volume = 6.283185307179586
label = "T1"
warp = "1 + 2*t^4 + 2*t^8"
)toml";

} // namespace

TEST_CASE("metric file parsing") {
    const auto m = parse_metric_toml(kCase1Toml);
    CHECK(m.factors.size() == 2);
    CHECK(m.half_width == 0.1);
    CHECK(m.factors[0].dim == 2);
    CHECK(m.factors[0].sec_curv == 1);
    CHECK(close(m.factors[0].volume, 4 * M_PI, 1e-12)); // computed for the sphere
    CHECK(m.factors[1].label == "T1");
    CHECK(geometry::gauss_residual(m).is_zero());

    // coefficient form goes through the square root
    const auto mm = parse_metric_toml(R"([metric]
epsilon = 0.25
[[factor]]
dim = 2
sec_curv = 1
coeff = "1 + t^4"
)");
    CHECK(close(geometry::ambient_scalar(mm, 0.0), 2.0, 1e-13));

    // rational curvature as a quoted fraction
    const auto frac = parse_metric_toml(R"([metric]
epsilon = 0.1
[[factor]]
dim = 2
sec_curv = "1/2"
volume = 1.0
warp = "1"
)");
    CHECK(frac.factors[0].sec_curv == rat(1, 2));

    CHECK_THROWS_AS(parse_metric_toml("[[factor]]\ndim = 2\nwarp = \"1\"\n"), ParseError);
    CHECK_THROWS_AS(parse_metric_toml("[metric]\nepsilon = 0.1\n"), ParseError);
    CHECK_THROWS_AS(parse_metric_toml(R"([metric]
epsilon = 0.1
[[factor]]
dim = 2
sec_curv = 1
warp = "1"
coeff = "1"
)"),
                    ParseError);
    CHECK_THROWS_AS(parse_metric_toml(R"([metric]
epsilon = 0.1
[[factor]]
dim = 2
sec_curv = -1
warp = "1"
)"),
                    ParseError); // volume required for non-spheres
    // nonpositive warp on the window surfaces as DomainError
    CHECK_THROWS_AS(parse_metric_toml(R"([metric]
epsilon = 2.0
[[factor]]
dim = 2
sec_curv = 1
warp = "1 - t^2"
)"),
                    DomainError);
}

TEST_CASE("report command") {
    RunConfig cfg;
    cfg.input_path = write_temp("wc_case1.toml", kCase1Toml);

    std::ostringstream out, err;
    CHECK(run_report(cfg, out, err) == kExitPass);
    CHECK(out.str().find("identically zero") == std::string::npos); // H is not zero here
    CHECK(out.str().find("PASS") != std::string::npos);

    cfg.format = Format::Csv;
    std::ostringstream csv;
    CHECK(run_report(cfg, csv, err) == kExitPass);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,H,B2,RicNN,S_leaf,S_ambient,area_ratio");
    size_t n_rows = 0;
    for (std::string line; std::getline(lines, line);) ++n_rows;
    CHECK(n_rows == 1001);

    cfg.format = Format::Json;
    std::ostringstream js;
    CHECK(run_report(cfg, js, err) == kExitPass);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["pass"].get<bool>());
    CHECK(doc["residuals"]["gauss_jet_zero"].get<bool>());

    // missing file and malformed metric report input errors
    RunConfig bad;
    bad.input_path = "/nonexistent/file.toml";
    std::ostringstream sink;
    CHECK(run_report(bad, sink, sink) == kExitInputError);

    RunConfig dom;
    dom.input_path = write_temp("wc_dom.toml", R"([metric]
epsilon = 2.0
[[factor]]
dim = 2
sec_curv = 1
warp = "1 - t^2"
)");
    std::ostringstream derr;
    CHECK(run_report(dom, sink, derr) == kExitInputError);
    CHECK(derr.str().find("nonpositive") != std::string::npos);

    // jet order floor is enforced
    RunConfig low = cfg;
    low.jet_order = 8;
    CHECK(run_report(low, sink, sink) == kExitInputError);

    // warp with an irrational value at 0: float table still runs, jet
    // summaries degrade to "unavailable"
    RunConfig irr;
    irr.input_path = write_temp("wc_irrational.toml", R"toml([metric]
epsilon = 0.2
[[factor]]
dim = 2
sec_curv = 1
coeff = "2 + t^2"
)toml");
    std::ostringstream iout, ierr;
    CHECK(run_report(irr, iout, ierr) == kExitPass);
    CHECK(iout.str().find("unavailable") != std::string::npos);
}

TEST_CASE("verify-paper command") {
    RunConfig cfg;
    std::ostringstream out, err;
    CHECK(run_verify_paper(cfg, out, err) == kExitPass);
    CHECK(out.str().find("FAIL") == std::string::npos);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(out.str().find("[PAPER]") != std::string::npos);
    CHECK(out.str().find("[DERIVED]") != std::string::npos);
    CHECK(out.str().find("[TRIVIAL]") != std::string::npos);

    RunConfig only;
    only.only = "case1";
    only.n = 4;
    std::ostringstream oout;
    CHECK(run_verify_paper(only, oout, err) == kExitPass);
    CHECK(oout.str().find("case1_n4") != std::string::npos);
    CHECK(oout.str().find("case2") == std::string::npos);

    RunConfig missing;
    missing.only = "no_such_entry";
    std::ostringstream sink;
    CHECK(run_verify_paper(missing, sink, sink) == kExitInputError);

    // the third construction is undefined at n = 4
    RunConfig c34;
    c34.only = "case3";
    c34.n = 4;
    CHECK(run_verify_paper(c34, sink, sink) == kExitInputError);

    RunConfig inject;
    inject.inject_failure = true;
    std::ostringstream iout;
    CHECK(run_verify_paper(inject, iout, err) == kExitVerificationFailure);
    CHECK(iout.str().find("FAIL") != std::string::npos);
}

TEST_CASE("verify-paper json round trip") {
    RunConfig cfg;
    cfg.format = Format::Json;
    std::ostringstream out, err;
    REQUIRE(run_verify_paper(cfg, out, err) == kExitPass);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["all_pass"].get<bool>());
    CHECK(doc["n_claims"].get<size_t>() >= 25);

    // re-verify: emitted verdicts match a fresh run claim-for-claim
    std::ostringstream out2;
    REQUIRE(run_verify_paper(cfg, out2, err) == kExitPass);
    const auto doc2 = nlohmann::json::parse(out2.str());
    REQUIRE(doc["claims"].size() == doc2["claims"].size());
    for (size_t i = 0; i < doc["claims"].size(); ++i) {
        CHECK(doc["claims"][i]["pass"] == doc2["claims"][i]["pass"]);
        CHECK(doc["claims"][i]["entry"] == doc2["claims"][i]["entry"]);
        CHECK(doc["claims"][i]["computed"] == doc2["claims"][i]["computed"]);
        const std::string tag = doc["claims"][i]["provenance"].get<std::string>();
        CHECK((tag == "PAPER" || tag == "DERIVED" || tag == "TRIVIAL"));
    }
}

TEST_CASE("verify-paper csv output") {
    RunConfig cfg;
    cfg.format = Format::Csv;
    cfg.only = "case1_n4";
    std::ostringstream out, err;
    REQUIRE(run_verify_paper(cfg, out, err) == kExitPass);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "entry,quantity,kind,expected,computed,result,provenance,note");
    size_t rows = 0;
    bool disputed_note_present = false;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
        CHECK(line.find("PASS") != std::string::npos);
        if (line.find("stated leading term") != std::string::npos)
            disputed_note_present = true;
    }
    CHECK(rows >= 10);
    CHECK(disputed_note_present); // the disputed coefficient carries both values
}

TEST_CASE("chain-check command") {
    const char* scenario = R"({
      "leaf_dim": 4,
      "S0": -2.0,
      "samples": [
        [1.0, -2.0, -2.0, 0.0, 0.0, 1.0, 0.0],
        [1.5, -2.0, -2.0, 0.0, 0.0, 1.0, 0.0]
      ]
    })";
    RunConfig cfg;
    cfg.input_path = write_temp("wc_scenario.json", scenario);
    std::ostringstream out, err;
    CHECK(run_chain_check(cfg, out, err) == kExitPass);
    CHECK(out.str().find("holder") != std::string::npos);
    CHECK(out.str().find("4(m-1)/(m-2)") != std::string::npos); // conversion note

    const auto s = parse_scenario_json(scenario);
    CHECK(s.leaf_dim == 4);
    CHECK(s.samples.size() == 2);
    CHECK(s.samples[1].mu == 1.5);

    CHECK_THROWS_AS(parse_scenario_json("{\"leaf_dim\": 3}"), ParseError);
    CHECK_THROWS_AS(parse_scenario_json("{bad json"), ParseError);

    RunConfig bad;
    bad.input_path = write_temp("wc_badscen.json",
                                R"({"leaf_dim": 2, "S0": 0, "samples": [[1,0,0,0,0,1,0]]})");
    std::ostringstream sink;
    CHECK(run_chain_check(bad, sink, sink) == kExitInputError);

    // S_M below S0 breaks the scalar-lower-bound step: negative slack, exit 1
    RunConfig broken;
    broken.input_path = write_temp(
        "wc_broken.json",
        R"({"leaf_dim": 4, "S0": -1.0, "samples": [[1.0, -2.0, -5.0, 0.0, 0.0, 1.0, 0.0]]})");
    std::ostringstream bout;
    CHECK(run_chain_check(broken, bout, sink) == kExitVerificationFailure);
    CHECK(bout.str().find("NOT monotone") != std::string::npos);
}

TEST_CASE("gronwall command") {
    auto make_doc = [](const std::string& h_expr) {
        nlohmann::json doc;
        std::vector<double> grid, H, phi, xi;
        for (int i = 0; i <= 100; ++i) {
            const double t = 0.5 * i / 100.0;
            grid.push_back(t);
            if (h_expr == "zero") H.push_back(0.0);
            if (h_expr == "linear") H.push_back(t);
            if (h_expr == "negsquare") H.push_back(-t * t);
            phi.push_back(1.0);
            xi.push_back(1.0);
        }
        doc["grid"] = grid;
        doc["H"] = H;
        doc["phi"] = phi;
        doc["xi"] = xi;
        doc["S0"] = -2.0;
        doc["n"] = 4;
        doc["C1"] = 1.0;
        doc["C2"] = 1.0;
        return doc.dump();
    };

    RunConfig cfg;
    std::ostringstream out, err;
    cfg.input_path = write_temp("wc_gron_zero.json", make_doc("zero"));
    CHECK(run_gronwall(cfg, out, err) == kExitPass);

    cfg.input_path = write_temp("wc_gron_neg.json", make_doc("negsquare"));
    std::ostringstream out2;
    CHECK(run_gronwall(cfg, out2, err) == kExitPass);

    cfg.input_path = write_temp("wc_gron_lin.json", make_doc("linear"));
    std::ostringstream out3;
    CHECK(run_gronwall(cfg, out3, err) == kExitVerificationFailure);
    CHECK(out3.str().find("violated") != std::string::npos);

    cfg.format = Format::Json;
    cfg.input_path = write_temp("wc_gron_neg2.json", make_doc("negsquare"));
    std::ostringstream jout;
    CHECK(run_gronwall(cfg, jout, err) == kExitPass);
    const auto doc = nlohmann::json::parse(jout.str());
    CHECK(doc["pass"].get<bool>());
    CHECK(doc["inequality_satisfied"].get<bool>());
    CHECK(doc["residuals"].size() == 100);
    CHECK(close(doc["c3"].get<double>(), 2.0 / 3.0, 1e-14));
}

TEST_CASE("chain-check json output") {
    RunConfig cfg;
    cfg.format = Format::Json;
    // Gauss-consistent single sample: RicNN = (S_M - S - B2)/2
    cfg.input_path = write_temp("wc_scen_json.json", R"({
      "leaf_dim": 3, "S0": 0.0,
      "samples": [[1.0, 0.5, 0.5, 0.2, -0.1, 1.1, 0.3]]
    })");
    std::ostringstream out, err;
    CHECK(run_chain_check(cfg, out, err) == kExitPass);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["monotone"].get<bool>());
    CHECK(doc["steps"].size() == 6);
    CHECK(doc["conformal_coefficient"].get<double>() == 8.0); // 4(m-1)/(m-2), m = 3
    CHECK(doc["holder_exponent"].get<double>() == 6.0);
}

TEST_CASE("shipped example inputs load and pass") {
    for (const char* name : {"case1_n4.toml", "torus3_k2.toml", "mm_sphere.toml",
                             "hyperbolic_product.toml"}) {
        RunConfig cfg;
        cfg.input_path = std::string(WARPCHECK_DATA_DIR) + "/" + name;
        std::ostringstream out, err;
        CHECK(run_report(cfg, out, err) == kExitPass);
    }
    {
        RunConfig cfg;
        cfg.input_path = std::string(WARPCHECK_DATA_DIR) + "/scenario_equality.json";
        std::ostringstream out, err;
        CHECK(run_chain_check(cfg, out, err) == kExitPass);
    }
    {
        RunConfig cfg;
        cfg.input_path = std::string(WARPCHECK_DATA_DIR) + "/gronwall_negsquare.json";
        std::ostringstream out, err;
        CHECK(run_gronwall(cfg, out, err) == kExitPass);
    }
}

TEST_CASE("yamabe-min command") {
    RunConfig cfg;
    cfg.yamabe_grid = 8;
    cfg.seed = 5;
    std::ostringstream out, err;
    CHECK(run_yamabe_min(cfg, out, err) == kExitPass);
    CHECK(out.str().find("Q_est") != std::string::npos);

    cfg.csv_dump = (std::filesystem::temp_directory_path() / "wc_fmin.csv").string();
    std::ostringstream out2;
    CHECK(run_yamabe_min(cfg, out2, err) == kExitPass);
    std::ifstream csv(cfg.csv_dump);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "i,j,k,f");
}
