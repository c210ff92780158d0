#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "syzygy/graded_module.hpp"

namespace syzygy {

// On-disk module cache: one directory per module, one SYZMAT file per
// action matrix, plus a JSON manifest. Round-trips are exact, so warm
// runs reproduce cold-run tables verbatim.

std::string module_cache_key(const std::string& object, int genus, const FieldSpec& field,
                             const std::string& method, int qmax);

template <class F>
void save_module(const std::filesystem::path& cache_dir, const GradedModule<F>& m);

template <class F>
std::optional<GradedModule<F>> load_module(const std::filesystem::path& cache_dir, F field,
                                           const std::string& object, int genus,
                                           const std::string& method, int qmax);

}  // namespace syzygy
