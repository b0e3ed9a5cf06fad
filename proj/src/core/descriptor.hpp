#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "core/cones.hpp"
#include "core/expr.hpp"

namespace lefvar {

/// Parsed model descriptor (UTF-8 JSON):
///   {
///     "n": 2,
///     "omega": "i*(dz1^dzb1 + dz2^dzb2)",   // optional, standard form by default
///     "modes": [[0,0,0,0], ...],            // optional explicit mode list
///     "mode_radius": 1,                     // optional sup-norm box instead
///     "bindings": {"v": "...", "alpha": "..."},
///     "suite": "all",
///     "seed": 7                             // number or decimal string
///   }
struct ModelDescriptor {
    int n = 2;
    std::string omega_src;
    std::vector<ModeKey> modes;
    std::optional<int> mode_radius;
    std::map<std::string, std::string> bindings;
    std::string suite = "all";
    std::uint64_t seed = 0;
};

ModelDescriptor parse_descriptor(const std::string& json_text);

/// Fully elaborated workspace: every expression in the descriptor is
/// parsed and evaluated before any suite runs.
struct Workspace {
    ModelDescriptor descriptor;
    std::unique_ptr<TorusContext> torus;
    std::map<std::string, FourierForm<Scalar>> bindings;

    const Sl2Model<Scalar>& model() const { return torus->model(); }
    const StarContext<Scalar>& star() const { return torus->star(); }
    int dim() const { return torus->dim(); }
};

Workspace elaborate_descriptor(const ModelDescriptor& desc);

} // namespace lefvar
