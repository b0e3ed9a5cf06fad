#include "lefvar/lefvar.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "core/suites.hpp"

using namespace lefvar;

struct lv_model {
    Workspace workspace;
};

namespace {

thread_local std::string g_last_error;

lv_status status_of(Errc code)
{
    switch (code) {
        case Errc::syntax_error:
        case Errc::index_out_of_range: return LV_ERR_PARSE;
        case Errc::bad_descriptor: return LV_ERR_DESCRIPTOR;
        case Errc::division_by_zero:
        case Errc::not_invertible:
        case Errc::singular:
        case Errc::inconsistent:
        case Errc::singular_block:
        case Errc::not_lefschetz: return LV_ERR_SINGULAR;
        case Errc::mode_overflow: return LV_ERR_OVERFLOW;
        case Errc::invariant_violation: return LV_ERR_INVARIANT;
        default: return LV_ERR_DOMAIN;
    }
}

template <class Fn>
lv_status guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LV_ERR_INVARIANT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LV_ERR_INVARIANT;
    }
}

lv_status arg_error(const char* message)
{
    g_last_error = message;
    return LV_ERR_BAD_ARGUMENT;
}

char* copy_string(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

FourierForm<Scalar> eval_expr(const Workspace& ws, const char* src)
{
    FormExpr e = parse_form(src, ws.dim());
    return elaborate(e, ws.model().omega(), ws.torus->mode_set());
}

} // namespace

extern "C" {

const char* lv_status_name(lv_status status)
{
    switch (status) {
        case LV_OK: return "Ok";
        case LV_ERR_BAD_ARGUMENT: return "BadArgument";
        case LV_ERR_PARSE: return "ParseError";
        case LV_ERR_DESCRIPTOR: return "DescriptorError";
        case LV_ERR_DOMAIN: return "DomainError";
        case LV_ERR_SINGULAR: return "SingularError";
        case LV_ERR_OVERFLOW: return "ModeOverflow";
        case LV_ERR_INVARIANT: return "InvariantError";
        case LV_ERR_CHECKS_FAILED: return "ChecksFailed";
    }
    return "Unknown";
}

const char* lv_last_error(void)
{
    return g_last_error.c_str();
}

lv_status lv_model_create(const char* descriptor_json, lv_model** out)
{
    if (descriptor_json == nullptr || out == nullptr)
        return arg_error("null argument");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<lv_model>();
        model->workspace = elaborate_descriptor(parse_descriptor(descriptor_json));
        *out = model.release();
        return LV_OK;
    });
}

void lv_model_destroy(lv_model* model)
{
    delete model;
}

int lv_model_dimension(const lv_model* model)
{
    return model == nullptr ? -1 : model->workspace.dim();
}

lv_status lv_run_suite(lv_model* model, const char* suite, int64_t seed_override, int format,
                       lv_line_callback callback, void* user, int* failures_out)
{
    if (model == nullptr || suite == nullptr || callback == nullptr)
        return arg_error("null argument");
    if (format != LV_FORMAT_JSON && format != LV_FORMAT_TABLE)
        return arg_error("unknown format");
    return guarded([&] {
        if (format == LV_FORMAT_TABLE)
            callback(record_table_header().c_str(), user);
        std::optional<std::uint64_t> seed;
        if (seed_override >= 0)
            seed = std::uint64_t(seed_override);
        int failures = run_suites(model->workspace, suite, seed, [&](const CheckRecord& r) {
            std::string line =
                format == LV_FORMAT_JSON ? record_json_line(r) : record_table_row(r);
            callback(line.c_str(), user);
        });
        if (failures_out != nullptr)
            *failures_out = failures;
        if (failures > 0) {
            g_last_error = std::to_string(failures) + " checks failed";
            return LV_ERR_CHECKS_FAILED;
        }
        return LV_OK;
    });
}

lv_status lv_decompose(lv_model* model, const char* expr, const char* deform_expr,
                       char** json_out)
{
    if (model == nullptr || expr == nullptr || json_out == nullptr)
        return arg_error("null argument");
    *json_out = nullptr;
    return guarded([&] {
        const Workspace& ws = model->workspace;
        Form<Scalar> x = as_constant(eval_expr(ws, expr));
        require(x.is_homogeneous(), Errc::bad_descriptor,
                "decompose expects a homogeneous form");
        nlohmann::ordered_json doc;
        doc["expr"] = expr;
        doc["degree"] = x.is_zero() ? 0 : x.degree();
        auto& components = doc["components"] = nlohmann::ordered_json::array();
        if (deform_expr == nullptr) {
            for (const auto& part : ws.model().primitive_decompose(x)) {
                components.push_back({{"power", part.power},
                                      {"form", print_form(part.primitive)}});
            }
        } else {
            Form<Scalar> v = as_constant(eval_expr(ws, deform_expr));
            doc["deformed_by"] = deform_expr;
            Sl2Model<Dual> deformed = deform_model(ws.model(), v);
            for (const auto& part : deformed.primitive_decompose(embed(x))) {
                components.push_back({{"power", part.power},
                                      {"body", print_form(body_part(part.primitive))},
                                      {"slope", print_form(slope_part(part.primitive))}});
            }
        }
        *json_out = copy_string(doc.dump());
        return LV_OK;
    });
}

lv_status lv_star(lv_model* model, const char* expr, char** json_out)
{
    if (model == nullptr || expr == nullptr || json_out == nullptr)
        return arg_error("null argument");
    *json_out = nullptr;
    return guarded([&] {
        const Workspace& ws = model->workspace;
        FourierForm<Scalar> x = eval_expr(ws, expr);
        nlohmann::ordered_json doc;
        doc["expr"] = expr;
        doc["result"] = print_fourier(star_fourier(x, *ws.torus));
        *json_out = copy_string(doc.dump());
        return LV_OK;
    });
}

lv_status lv_hmap(lv_model* model, const char* alpha_expr, const char* v_expr, int j,
                  char** json_out)
{
    if (model == nullptr || alpha_expr == nullptr || v_expr == nullptr || json_out == nullptr)
        return arg_error("null argument");
    *json_out = nullptr;
    return guarded([&] {
        const Workspace& ws = model->workspace;
        require(j >= 0, Errc::bad_descriptor, "j must be nonnegative");
        FourierForm<Scalar> alpha = eval_expr(ws, alpha_expr);
        FourierForm<Scalar> v = eval_expr(ws, v_expr);
        FourierForm<Scalar> x = wedge(
            alpha, FourierForm<Scalar>::constant(ws.model().omega().wedge_pow(j)),
            ws.torus->mode_set());
        HarmonicVariation hv = harmonic_variation(v, x, *ws.torus);
        nlohmann::ordered_json doc;
        doc["alpha"] = alpha_expr;
        doc["v"] = v_expr;
        doc["j"] = j;
        doc["h"] = print_fourier(hv.h);
        doc["h_tilde"] = print_fourier(hv.h_tilde);
        doc["stays_harmonic"] = hv.h.is_zero();
        Form<Scalar> a0 = alpha.constant_part();
        if (alpha == alpha.mode_zero_part() && !a0.is_zero() && a0.is_pure_type()
            && ws.model().is_primitive(a0) && !ws.model().lef_pow(a0, j).is_zero()) {
            FourierForm<Scalar> closed = harmonic_variation_closed(alpha, j, v, *ws.torus);
            doc["closed_form"] = print_fourier(closed);
            doc["matches_closed_form"] = (closed == hv.h);
        }
        *json_out = copy_string(doc.dump());
        return LV_OK;
    });
}

void lv_string_free(char* text)
{
    delete[] text;
}

} // extern "C"
