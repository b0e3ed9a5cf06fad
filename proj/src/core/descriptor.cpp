#include "core/descriptor.hpp"

#include <json.hpp>

namespace lefvar {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg)
{
    fail(Errc::bad_descriptor, msg);
}

} // namespace

ModelDescriptor parse_descriptor(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        bad("descriptor must be a JSON object");

    ModelDescriptor desc;
    for (const auto& [key, value] : doc.items()) {
        if (key == "n") {
            if (!value.is_number_integer())
                bad("'n' must be an integer");
            desc.n = value.get<int>();
        } else if (key == "omega") {
            if (!value.is_string())
                bad("'omega' must be a string expression");
            desc.omega_src = value.get<std::string>();
        } else if (key == "modes") {
            if (!value.is_array())
                bad("'modes' must be an array of integer vectors");
            for (const auto& entry : value) {
                if (!entry.is_array())
                    bad("each mode must be an array of integers");
                ModeKey k;
                for (const auto& comp : entry) {
                    if (!comp.is_number_integer())
                        bad("mode entries must be integers");
                    k.push_back(comp.get<int>());
                }
                desc.modes.push_back(std::move(k));
            }
        } else if (key == "mode_radius") {
            if (!value.is_number_integer() || value.get<int>() < 0)
                bad("'mode_radius' must be a nonnegative integer");
            desc.mode_radius = value.get<int>();
        } else if (key == "bindings") {
            if (!value.is_object())
                bad("'bindings' must be an object of expressions");
            for (const auto& [name, expr] : value.items()) {
                if (!expr.is_string())
                    bad("binding '" + name + "' must be a string expression");
                desc.bindings[name] = expr.get<std::string>();
            }
        } else if (key == "suite") {
            if (!value.is_string())
                bad("'suite' must be a string");
            desc.suite = value.get<std::string>();
        } else if (key == "seed") {
            if (value.is_number_unsigned()) {
                desc.seed = value.get<std::uint64_t>();
            } else if (value.is_number_integer()) {
                if (value.get<long long>() < 0)
                    bad("'seed' must be nonnegative");
                desc.seed = std::uint64_t(value.get<long long>());
            } else if (value.is_string()) {
                try {
                    desc.seed = std::stoull(value.get<std::string>());
                } catch (...) {
                    bad("'seed' string must be a decimal integer");
                }
            } else {
                bad("'seed' must be an integer or decimal string");
            }
        } else {
            bad("unknown descriptor key '" + key + "'");
        }
    }
    if (desc.n < 1 || desc.n > 5)
        bad("'n' must satisfy 1 <= n <= 5");
    if (desc.mode_radius && !desc.modes.empty())
        bad("give either 'modes' or 'mode_radius', not both");
    static const std::string suites[] = {"sl2", "hodge", "torus", "cones", "all"};
    bool known = false;
    for (const auto& s : suites)
        known = known || s == desc.suite;
    if (!known)
        bad("unknown suite '" + desc.suite + "'");
    return desc;
}

Workspace elaborate_descriptor(const ModelDescriptor& desc)
{
    int N = desc.n;
    ModeSet modes = desc.mode_radius   ? ModeSet::box(N, *desc.mode_radius)
                    : desc.modes.empty() ? ModeSet(N, {})
                                         : ModeSet(N, desc.modes);

    Form<Scalar> omega(N);
    if (desc.omega_src.empty()) {
        omega = standard_omega(N);
    } else {
        FourierForm<Scalar> value = elaborate(parse_form(desc.omega_src, N), standard_omega(N),
                                              modes);
        omega = as_constant(value);
        for (const auto& [m, c] : omega.terms())
            require(m.p() == 1 && m.q() == 1, Errc::bad_descriptor,
                    "omega must have pure bidegree (1,1)");
    }

    Workspace ws;
    ws.descriptor = desc;
    ws.torus = std::make_unique<TorusContext>(StarContext<Scalar>(build_model(omega, N)),
                                              std::move(modes));
    for (const auto& [name, src] : desc.bindings) {
        FormExpr e = parse_form(src, N);
        ws.bindings.emplace(name, elaborate(e, ws.model().omega(), ws.torus->mode_set()));
    }
    return ws;
}

} // namespace lefvar
