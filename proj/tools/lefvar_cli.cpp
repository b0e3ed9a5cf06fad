// Command-line front end. Talks to the core exclusively through the C
// API in lefvar/lefvar.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lefvar/lefvar.h"

namespace {

struct ModelHandle {
    lv_model* model = nullptr;
    ~ModelHandle() { lv_model_destroy(model); }
};

int load_model(const std::string& path, ModelHandle& handle)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open model file '" << path << "'\n";
        return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    lv_status status = lv_model_create(text.str().c_str(), &handle.model);
    if (status != LV_OK) {
        std::cerr << "error: " << lv_status_name(status) << ": " << lv_last_error() << "\n";
        return 2;
    }
    return 0;
}

void print_line(const char* line, void*)
{
    std::fputs(line, stdout);
    std::fputc('\n', stdout);
}

int print_result(lv_status status, char* json)
{
    if (status != LV_OK) {
        std::cerr << "error: " << lv_status_name(status) << ": " << lv_last_error() << "\n";
        return 2;
    }
    std::fputs(json, stdout);
    std::fputc('\n', stdout);
    lv_string_free(json);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact Lefschetz/Hodge variation laboratory"};
    app.require_subcommand(1);

    std::string model_path;
    std::string suite = "all";
    std::int64_t seed = -1;
    bool as_json = false;
    bool as_table = false;
    std::string expr, deformed_by, alpha_expr, v_expr;
    int j = 0;

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--model", model_path, "model descriptor (JSON file)")->required();
    verify->add_option("--suite", suite, "sl2 | hodge | torus | cones | all");
    verify->add_option("--seed", seed, "override the descriptor seed");
    verify->add_flag("--json", as_json, "JSON lines output (default)");
    verify->add_flag("--table", as_table, "aligned table output");

    CLI::App* decompose = app.add_subcommand("decompose", "primitive decomposition");
    decompose->add_option("--model", model_path, "model descriptor (JSON file)")->required();
    decompose->add_option("--expr", expr, "form expression")->required();
    decompose->add_option("--deformed-by", deformed_by,
                          "decompose for omega + eps*v instead");

    CLI::App* star = app.add_subcommand("star", "Hodge star of an expression");
    star->add_option("--model", model_path, "model descriptor (JSON file)")->required();
    star->add_option("--expr", expr, "form expression")->required();

    CLI::App* hmap = app.add_subcommand("hmap", "harmonic-variation map on alpha*w^j");
    hmap->add_option("--model", model_path, "model descriptor (JSON file)")->required();
    hmap->add_option("--alpha", alpha_expr, "harmonic form expression")->required();
    hmap->add_option("--v", v_expr, "closed real (1,1) direction")->required();
    hmap->add_option("--j", j, "power of omega");

    CLI11_PARSE(app, argc, argv);

    ModelHandle handle;
    if (int rc = load_model(model_path, handle); rc != 0)
        return rc;

    if (verify->parsed()) {
        if (as_json && as_table) {
            std::cerr << "error: give at most one of --json / --table\n";
            return 2;
        }
        int failures = 0;
        lv_status status = lv_run_suite(handle.model, suite.c_str(), seed,
                                        as_table ? LV_FORMAT_TABLE : LV_FORMAT_JSON,
                                        print_line, nullptr, &failures);
        if (status == LV_OK)
            return 0;
        if (status == LV_ERR_CHECKS_FAILED) {
            std::cerr << failures << " checks failed\n";
            return 1;
        }
        std::cerr << "error: " << lv_status_name(status) << ": " << lv_last_error() << "\n";
        return 2;
    }
    if (decompose->parsed()) {
        char* json = nullptr;
        lv_status status = lv_decompose(handle.model, expr.c_str(),
                                        deformed_by.empty() ? nullptr : deformed_by.c_str(),
                                        &json);
        return print_result(status, json);
    }
    if (star->parsed()) {
        char* json = nullptr;
        lv_status status = lv_star(handle.model, expr.c_str(), &json);
        return print_result(status, json);
    }
    if (hmap->parsed()) {
        char* json = nullptr;
        lv_status status = lv_hmap(handle.model, alpha_expr.c_str(), v_expr.c_str(), j, &json);
        return print_result(status, json);
    }
    return 2;
}
