// Exercises the shared-library C API end to end: handle lifecycle, status
// mapping, error messages and the canonical JSON surface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <string>

#include "slopekit/slopekit.h"

using nlohmann::json;

namespace {

// Fetches a record through an sk_* call and frees the C string.
template <typename F>
std::string fetch(F&& call, sk_status expect = SK_OK) {
    char* out = nullptr;
    const sk_status st = call(&out);
    REQUIRE(st == expect);
    if (st != SK_OK) {
        CHECK(out == nullptr);
        return {};
    }
    REQUIRE(out != nullptr);
    std::string s(out);
    sk_string_free(out);
    return s;
}

struct Curve {
    sk_curve* c = nullptr;
    explicit Curve(const char* text) { REQUIRE(sk_curve_parse(text, &c) == SK_OK); }
    ~Curve() { sk_curve_free(c); }
};

}  // namespace

TEST_CASE("version and trivial lifecycle") {
    REQUIRE(sk_version() != nullptr);
    CHECK(std::strcmp(sk_version(), "1.0.0") == 0);
    sk_string_free(nullptr);   // must be a no-op
    sk_curve_free(nullptr);
    REQUIRE(sk_last_error() != nullptr);
}

TEST_CASE("parse, canonicalize and free a curve") {
    Curve c("p=2 u=1 s=1 f=x^5+x^3");
    char* text = nullptr;
    REQUIRE(sk_curve_canonical(c.c, &text) == SK_OK);
    CHECK(std::string(text) == "p=2 u=1 s=1 f=1*x^5+1*x^3");
    sk_string_free(text);

    // Canonical text re-parses to the same canonical text.
    sk_curve* c2 = nullptr;
    REQUIRE(sk_curve_parse("p=2 u=1 s=1 f=1*x^5+1*x^3", &c2) == SK_OK);
    char* text2 = nullptr;
    REQUIRE(sk_curve_canonical(c2, &text2) == SK_OK);
    CHECK(std::string(text2) == "p=2 u=1 s=1 f=1*x^5+1*x^3");
    sk_string_free(text2);
    sk_curve_free(c2);
}

TEST_CASE("parse failures carry a column position") {
    sk_curve* c = reinterpret_cast<sk_curve*>(1);
    CHECK(sk_curve_parse("p=2 u=1 s=1 f=x^^3", &c) == SK_ERR_PARSE);
    CHECK(c == nullptr);   // output reset on failure
    CHECK(std::string(sk_last_error()).find("position") != std::string::npos);

    CHECK(sk_curve_parse("p=4 u=1 s=1 f=x^3", &c) != SK_OK);
    CHECK(sk_curve_parse("", &c) == SK_ERR_PARSE);
    CHECK(sk_curve_parse(nullptr, &c) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_curve_parse("p=2 u=1 s=1 f=x^3", nullptr) == SK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("lpoly, newton and check records for the worked example") {
    Curve c("p=2 u=1 s=1 f=x^3");
    const std::string rec =
        fetch([&](char** out) { return sk_lpoly_json(c.c, 1, 0, 0, out); });
    const json j = json::parse(rec);
    CHECK(j["L"] == json::array({"1", "0", "2"}));
    CHECK(j["newton_slopes"] == json::array({"1/2", "1/2"}));
    CHECK(j["supersingular"] == true);
    CHECK(sk_record_ok(rec.c_str()) == 1);

    const std::string nrec =
        fetch([&](char** out) { return sk_newton_json(c.c, 0, 0, out); });
    CHECK(json::parse(nrec)["first_slope"] == "1/2");

    const std::string crec =
        fetch([&](char** out) { return sk_check_json(c.c, 0, 0, 0, out); });
    CHECK(json::parse(crec)["verdicts"]["p_rank_zero"] == true);

    // Identical invocations must agree byte for byte.
    const std::string again =
        fetch([&](char** out) { return sk_check_json(c.c, 0, 0, 0, out); });
    CHECK(crec == again);

    CHECK(sk_lpoly_json(nullptr, 0, 0, 0, nullptr) == SK_ERR_INVALID_ARGUMENT);
    char* out = nullptr;
    CHECK(sk_lpoly_json(nullptr, 0, 0, 0, &out) == SK_ERR_INVALID_ARGUMENT);
    CHECK(out == nullptr);
}

TEST_CASE("budget errors map to SK_ERR_BUDGET") {
    Curve c("p=2 u=1 s=1 f=x^9+x^5+x^3");   // genus 4, needs counts up to n=4
    char* out = nullptr;
    CHECK(sk_lpoly_json(c.c, 0, 2, 0, &out) == SK_ERR_BUDGET);
    CHECK(out == nullptr);
    CHECK(std::string(sk_last_error()).find("budget") != std::string::npos);
}

TEST_CASE("bounds, examples, tiling and series entry points") {
    const std::string b =
        fetch([](char** out) { return sk_bounds_json(2, 1, 1, 15, 7, out); });
    CHECK(json::parse(b)["hw_improved"] == "152");
    char* out = nullptr;
    CHECK(sk_bounds_json(2, 1, 1, 15, 0, &out) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_bounds_json(2, 1, 1, 4, 1, &out) == SK_ERR_INVALID_ARGUMENT);   // gcd(d,p)>1

    const std::string ex = fetch([](char** o) { return sk_examples_json(o); });
    const json exj = json::parse(ex);
    CHECK(exj["examples"][2]["status"] == "FLAG");
    CHECK(sk_record_ok(ex.c_str()) == 1);

    const uint32_t S[] = {1, 3};
    const std::string t =
        fetch([&](char** o) { return sk_tiling_json(10, S, 2, 2, 3, o); });
    CHECK(json::parse(t)["tilde_s"] == 2);
    CHECK(sk_tiling_json(10, nullptr, 2, 2, 3, &out) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_tiling_json(10, S, 2, 4, 3, &out) == SK_ERR_INVALID_ARGUMENT);   // p not prime

    const std::string sv =
        fetch([](char** o) { return sk_series_verify_json("rel", o); });
    CHECK(sk_record_ok(sv.c_str()) == 1);
    CHECK(sk_series_verify_json("bogus", &out) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_series_verify_json(nullptr, &out) == SK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sweep plans are deterministic and validated") {
    const auto call = [](char** o) {
        return sk_sweep_plan_json("p=2,3 u=1 s=1 dmax=5", 9, 25, 1u << 22, o);
    };
    const std::string a = fetch(call);
    const std::string b = fetch(call);
    CHECK(a == b);
    CHECK(json::parse(a)["curves"].size() == 25);

    char* out = nullptr;
    CHECK(sk_sweep_plan_json("p=6 u=1 s=1 dmax=5", 1, 5, 0, &out) == SK_ERR_PARSE);
    CHECK(sk_sweep_plan_json("p=2 u=40 s=40 dmax=9", 1, 5, 100, &out) == SK_ERR_BUDGET);
    CHECK(sk_sweep_plan_json(nullptr, 1, 5, 0, &out) == SK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("record_ok is strict about its input") {
    CHECK(sk_record_ok(nullptr) == 0);
    CHECK(sk_record_ok("") == 0);
    CHECK(sk_record_ok("{\"ok\": true}") == 1);
    CHECK(sk_record_ok("{\"ok\": false}") == 0);
    CHECK(sk_record_ok("[1,2,3]") == 0);
}
