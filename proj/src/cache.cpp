#include "syzygy/cache.hpp"

#include <fstream>

#include "json.hpp"

namespace syzygy {

namespace {

std::string field_tag(const FieldSpec& f) {
    return f.kind == FieldKind::rationals ? "QQ" : "p" + std::to_string(f.p);
}

template <class F>
void write_matrix_file(const std::filesystem::path& path, const SparseMatrix<F>& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cache: cannot write " + path.string());
    write_syzmat(os, m);
}

template <class F>
SparseMatrix<F> read_matrix_file(const std::filesystem::path& path, F field) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cache: cannot read " + path.string());
    return read_syzmat(is, field);
}

}  // namespace

std::string module_cache_key(const std::string& object, int genus, const FieldSpec& field,
                             const std::string& method, int qmax) {
    std::string key = object;
    if (genus > 0) key += "_g" + std::to_string(genus);
    key += "_" + field_tag(field);
    if (!method.empty()) key += "_" + method;
    key += "_q" + std::to_string(qmax);
    return key;
}

template <class F>
void save_module(const std::filesystem::path& cache_dir, const GradedModule<F>& m) {
    auto dir = cache_dir / module_cache_key(m.object_tag, m.genus, m.field.spec(), m.method, m.qmax());
    std::filesystem::create_directories(dir);
    nlohmann::json man;
    man["schema"] = "syzygy-cache/1";
    man["object"] = m.object_tag;
    man["genus"] = m.genus;
    man["field"] = m.field.spec().str();
    man["method"] = m.method;
    man["qmax"] = m.qmax();
    man["num_gens"] = m.num_gens;
    std::vector<Index> dims, ambient_dims;
    for (const auto& p : m.pieces) {
        dims.push_back(p.dim);
        ambient_dims.push_back(p.ambient_dim);
    }
    man["dims"] = dims;
    man["ambient_dims"] = ambient_dims;
    man["has_amb_act"] = !m.amb_act.empty();
    std::vector<std::string> files;
    for (int q = 0; q < m.qmax(); ++q) {
        for (int k = 0; k < m.num_gens; ++k) {
            std::string name = "act_q" + std::to_string(q) + "_k" + std::to_string(k) + ".mat";
            write_matrix_file(dir / name, m.action(k, q));
            files.push_back(name);
            if (!m.amb_act.empty()) {
                std::string aname = "amb_q" + std::to_string(q) + "_k" + std::to_string(k) + ".mat";
                write_matrix_file(dir / aname, m.amb_act[static_cast<size_t>(q)][static_cast<size_t>(k)]);
                files.push_back(aname);
            }
        }
    }
    for (int q = 0; q <= m.qmax(); ++q) {
        if (m.pieces[static_cast<size_t>(q)].ambient_dim > 0) {
            std::string iname = "incl_q" + std::to_string(q) + ".mat";
            write_matrix_file(dir / iname, *m.pieces[static_cast<size_t>(q)].incl);
            files.push_back(iname);
        }
    }
    man["files"] = files;
    std::ofstream os(dir / "manifest.json");
    if (!os) throw std::runtime_error("cache: cannot write manifest in " + dir.string());
    os << man.dump(2) << "\n";
}

template <class F>
std::optional<GradedModule<F>> load_module(const std::filesystem::path& cache_dir, F field,
                                           const std::string& object, int genus,
                                           const std::string& method, int qmax) {
    auto dir = cache_dir / module_cache_key(object, genus, field.spec(), method, qmax);
    auto manifest_path = dir / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) return std::nullopt;
    std::ifstream is(manifest_path);
    nlohmann::json man = nlohmann::json::parse(is);
    if (man.value("schema", "") != "syzygy-cache/1") return std::nullopt;
    if (man.value("field", "") != field.spec().str()) return std::nullopt;

    GradedModule<F> m(field);
    m.field = field;
    m.object_tag = object;
    m.genus = genus;
    m.method = method;
    m.num_gens = man["num_gens"].get<int>();
    std::vector<Index> dims = man["dims"].get<std::vector<Index>>();
    std::vector<Index> ambient_dims = man["ambient_dims"].get<std::vector<Index>>();
    bool has_amb = man["has_amb_act"].get<bool>();
    for (size_t q = 0; q < dims.size(); ++q) {
        typename GradedModule<F>::Piece p;
        p.dim = dims[q];
        p.ambient_dim = ambient_dims[q];
        if (p.ambient_dim > 0)
            p.incl = read_matrix_file(dir / ("incl_q" + std::to_string(q) + ".mat"), field);
        m.pieces.push_back(std::move(p));
    }
    for (int q = 0; q + 1 < static_cast<int>(dims.size()); ++q) {
        std::vector<SparseMatrix<F>> arow, brow;
        for (int k = 0; k < m.num_gens; ++k) {
            arow.push_back(read_matrix_file(
                dir / ("act_q" + std::to_string(q) + "_k" + std::to_string(k) + ".mat"), field));
            if (has_amb)
                brow.push_back(read_matrix_file(
                    dir / ("amb_q" + std::to_string(q) + "_k" + std::to_string(k) + ".mat"), field));
        }
        m.act.push_back(std::move(arow));
        if (has_amb) m.amb_act.push_back(std::move(brow));
    }
    return m;
}

template void save_module(const std::filesystem::path&, const GradedModule<RationalField>&);
template void save_module(const std::filesystem::path&, const GradedModule<PrimeField>&);
template std::optional<GradedModule<RationalField>> load_module(const std::filesystem::path&,
                                                                RationalField, const std::string&,
                                                                int, const std::string&, int);
template std::optional<GradedModule<PrimeField>> load_module(const std::filesystem::path&,
                                                             PrimeField, const std::string&, int,
                                                             const std::string&, int);

}  // namespace syzygy
