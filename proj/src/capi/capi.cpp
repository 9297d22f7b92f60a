// C ABI for the slopekit core: opaque curve handles, status codes, JSON out.
#include "slopekit/slopekit.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "slopekit/curve.hpp"
#include "slopekit/field.hpp"
#include "slopekit/records.hpp"
#include "slopekit/util.hpp"

struct sk_curve {
    slopekit::curve::CurveSpec spec;
};

namespace {

thread_local std::string g_last_error;

sk_status map_errc(slopekit::Errc c) {
    switch (c) {
        case slopekit::Errc::invalid_argument: return SK_ERR_INVALID_ARGUMENT;
        case slopekit::Errc::parse_error:      return SK_ERR_PARSE;
        case slopekit::Errc::budget_exceeded:  return SK_ERR_BUDGET;
        case slopekit::Errc::unsupported:      return SK_ERR_UNSUPPORTED;
        case slopekit::Errc::inconsistency:    return SK_ERR_INCONSISTENCY;
    }
    return SK_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

uint64_t effective_budget(uint64_t budget) {
    return budget == 0 ? slopekit::field::kDefaultBudget : budget;
}

// Runs f(), stores its string through *out and maps exceptions to statuses.
template <typename F>
sk_status guarded(char** out, F&& f) {
    if (out == nullptr) {
        g_last_error = "output pointer is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        const std::string s = f();
        *out = dup_string(s);
        if (*out == nullptr) {
            g_last_error = "allocation failed";
            return SK_ERR_INTERNAL;
        }
        g_last_error.clear();
        return SK_OK;
    } catch (const slopekit::Error& e) {
        g_last_error = e.what();
        return map_errc(e.code);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SK_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SK_ERR_INTERNAL;
    }
}

sk_status require_curve(const sk_curve* c) {
    if (c == nullptr) {
        g_last_error = "curve handle is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    return SK_OK;
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "1.0.0"; }

const char* sk_last_error(void) { return g_last_error.c_str(); }

void sk_string_free(char* s) { std::free(s); }

sk_status sk_curve_parse(const char* text, sk_curve** out) {
    if (out == nullptr) {
        g_last_error = "output pointer is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    if (text == nullptr) {
        g_last_error = "curve text is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    try {
        auto spec = slopekit::curve::parse_curve(text);
        *out = new sk_curve{std::move(spec)};
        g_last_error.clear();
        return SK_OK;
    } catch (const slopekit::Error& e) {
        g_last_error = e.what();
        return map_errc(e.code);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SK_ERR_INTERNAL;
    }
}

void sk_curve_free(sk_curve* c) { delete c; }

sk_status sk_curve_canonical(const sk_curve* c, char** out) {
    if (const sk_status st = require_curve(c); st != SK_OK) return st;
    return guarded(out, [&] { return slopekit::curve::canonical_text(c->spec); });
}

sk_status sk_lpoly_json(const sk_curve* c, int verify, uint64_t budget,
                        int nthreads, char** out) {
    if (const sk_status st = require_curve(c); st != SK_OK) return st;
    return guarded(out, [&] {
        return slopekit::records::lpoly_record(c->spec, verify != 0,
                                               effective_budget(budget), nthreads);
    });
}

sk_status sk_newton_json(const sk_curve* c, uint64_t budget, int nthreads,
                         char** out) {
    if (const sk_status st = require_curve(c); st != SK_OK) return st;
    return guarded(out, [&] {
        return slopekit::records::newton_record(c->spec, effective_budget(budget),
                                                nthreads);
    });
}

sk_status sk_check_json(const sk_curve* c, int verify, uint64_t budget,
                        int nthreads, char** out) {
    if (const sk_status st = require_curve(c); st != SK_OK) return st;
    return guarded(out, [&] {
        return slopekit::records::check_record(c->spec, verify != 0,
                                               effective_budget(budget), nthreads);
    });
}

sk_status sk_bounds_json(uint32_t p, uint32_t s, uint32_t u, uint64_t d,
                         uint64_t n, char** out) {
    return guarded(out, [&] { return slopekit::records::bounds_record(p, s, u, d, n); });
}

sk_status sk_examples_json(char** out) {
    return guarded(out, [&] { return slopekit::records::examples_record(); });
}

sk_status sk_tiling_json(uint64_t r, const uint32_t* S, uint64_t S_len,
                         uint32_t p, uint32_t d, char** out) {
    if (S == nullptr && S_len > 0) {
        g_last_error = "S is null with nonzero length";
        return SK_ERR_INVALID_ARGUMENT;
    }
    return guarded(out, [&] {
        const std::vector<uint32_t> set(S, S + S_len);
        return slopekit::records::tiling_record(r, set, p, d);
    });
}

sk_status sk_series_verify_json(const char* selector, char** out) {
    if (selector == nullptr) {
        g_last_error = "selector is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    return guarded(out, [&] { return slopekit::records::series_verify_record(selector); });
}

sk_status sk_sweep_plan_json(const char* family, uint64_t seed, uint64_t count,
                             uint64_t budget, char** out) {
    if (family == nullptr) {
        g_last_error = "family is null";
        return SK_ERR_INVALID_ARGUMENT;
    }
    return guarded(out, [&] {
        return slopekit::records::sweep_plan(family, seed, count,
                                             effective_budget(budget));
    });
}

int sk_record_ok(const char* json_text) {
    if (json_text == nullptr) return 0;
    try {
        return slopekit::records::record_ok(json_text) ? 1 : 0;
    } catch (...) {
        return 0;
    }
}

}  // extern "C"
