#include "daereach/model_io.hpp"

#include "daereach/benchmarks.hpp"
#include "daereach/decoupling.hpp"
#include "daereach/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace daereach {

namespace {

using nlohmann::json;

constexpr std::string_view kBuiltin = "builtin:";

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

int line_of_offset(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text, const std::string& source)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(source, "", line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
}

[[noreturn]] void fail(const std::string& source, const std::string& field, const std::string& msg)
{
    throw ParseError(source, field, 0, msg);
}

double number_at(const json& v, const std::string& source, const std::string& field)
{
    if (!v.is_number()) fail(source, field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(source, field, "non-finite number");
    return x;
}

/// rows/cols < 0 means "infer from the dense layout".
Matrix parse_matrix(const json& v, Index rows, Index cols, const std::string& source, const std::string& field)
{
    if (v.is_object()) {
        if (!v.contains("sparse")) fail(source, field, "object matrices need a \"sparse\" triple list");
        if (v.contains("rows")) rows = v.at("rows").get<Index>();
        if (v.contains("cols")) cols = v.at("cols").get<Index>();
        if (rows < 0 || cols < 0) fail(source, field, "sparse matrix dimensions unknown");
        Matrix m = Matrix::Zero(rows, cols);
        const json& triples = v.at("sparse");
        if (!triples.is_array()) fail(source, field, "\"sparse\" must be an array");
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const json& e = triples[t];
            const std::string where = field + ".sparse[" + std::to_string(t) + "]";
            if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                fail(source, where, "expected [row, col, value]");
            }
            const Index r = e[0].get<Index>();
            const Index c = e[1].get<Index>();
            if (r < 0 || r >= rows || c < 0 || c >= cols) fail(source, where, "index out of range");
            m(r, c) += number_at(e[2], source, where);
        }
        return m;
    }
    if (!v.is_array()) fail(source, field, "expected a dense array of rows or a sparse object");

    const Index r = static_cast<Index>(v.size());
    Index c = 0;
    if (r > 0) {
        if (!v[0].is_array()) fail(source, field, "dense matrices are arrays of row arrays");
        c = static_cast<Index>(v[0].size());
    }
    if (rows >= 0 && r != rows) {
        fail(source, field, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
    }
    if (cols >= 0 && r > 0 && c != cols) {
        fail(source, field, "expected " + std::to_string(cols) + " columns, got " + std::to_string(c));
    }
    if (r == 0 && cols > 0) fail(source, field, "empty matrix");
    Matrix m(r, r > 0 ? c : std::max<Index>(cols, 0));
    for (Index i = 0; i < r; ++i) {
        const json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != c) {
            fail(source, field, "row " + std::to_string(i) + " has inconsistent length (matrix not rectangular)");
        }
        for (Index j = 0; j < c; ++j) {
            m(i, j) = number_at(row[static_cast<std::size_t>(j)], source,
                                field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    return m;
}

Vector parse_vector(const json& v, Index size, const std::string& source, const std::string& field)
{
    if (!v.is_array()) fail(source, field, "expected an array of numbers");
    Vector out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& e = v[i];
        if (e.is_array() && e.size() == 1) {
            out(static_cast<Index>(i)) = number_at(e[0], source, field);
        } else {
            out(static_cast<Index>(i)) = number_at(e, source, field + "[" + std::to_string(i) + "]");
        }
    }
    if (size >= 0 && out.size() != size) {
        fail(source, field, "expected " + std::to_string(size) + " entries, got " + std::to_string(out.size()));
    }
    return out;
}

const json& require(const json& doc, const char* key, const std::string& source)
{
    if (!doc.is_object()) fail(source, "", "top level must be an object");
    if (!doc.contains(key)) fail(source, key, "missing");
    return doc.at(key);
}

Index parse_dimension(const json& doc, const char* key, const std::string& source, bool positive)
{
    const json& v = require(doc, key, source);
    if (!v.is_number_integer()) fail(source, key, "expected an integer");
    const Index x = v.get<Index>();
    if (x < 0 || (positive && x == 0)) fail(source, key, "out of range");
    return x;
}

json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "", 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Benchmark parse_model(std::string_view text, const std::string& source)
{
    const json doc = parse_json(text, source);
    const Index n = parse_dimension(doc, "n", source, true);
    const Index m = doc.contains("m") ? parse_dimension(doc, "m", source, false) : 0;

    Matrix e = parse_matrix(require(doc, "E", source), n, n, source, "E");
    Matrix a = parse_matrix(require(doc, "A", source), n, n, source, "A");
    Matrix b = m > 0 ? parse_matrix(require(doc, "B", source), n, m, source, "B") : Matrix::Zero(n, 0);

    InputModel inputs;
    if (doc.contains("A_u")) {
        if (m == 0) fail(source, "A_u", "given but the model has no inputs");
        inputs = InputModel::dynamics(parse_matrix(doc.at("A_u"), m, m, source, "A_u"));
    }
    try {
        return {DaeSystem(std::move(e), std::move(a), std::move(b)), std::move(inputs)};
    } catch (const DaeError& err) {
        if (err.kind() == ErrorKind::dimension_mismatch || err.kind() == ErrorKind::invalid_argument) {
            fail(source, "", err.what());
        }
        throw;
    }
}

Benchmark load_model(const std::string& path_or_alias)
{
    if (starts_with(path_or_alias, kBuiltin)) {
        const std::string name = path_or_alias.substr(kBuiltin.size());
        if (name == "rotating-masses") return build_rotating_masses();
        if (starts_with(name, "stokes:")) {
            const std::string k = name.substr(7);
            int grid = 0;
            try {
                std::size_t used = 0;
                grid = std::stoi(k, &used);
                if (used != k.size()) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw ParseError(path_or_alias, "", 0, "bad Stokes grid size '" + k + "'");
            }
            if (grid < 2) throw ParseError(path_or_alias, "", 0, "Stokes grid size must be >= 2");
            // Constant force: u' = 0.
            return {build_stokes(grid), InputModel::dynamics(Matrix::Zero(1, 1))};
        }
        throw ParseError(path_or_alias, "", 0, "unknown builtin model");
    }
    return parse_model(read_text_file(path_or_alias), path_or_alias);
}

std::string serialize_model(const Benchmark& model)
{
    json doc;
    doc["n"] = model.system.n();
    doc["m"] = model.system.m();
    doc["E"] = matrix_to_json(model.system.E());
    doc["A"] = matrix_to_json(model.system.A());
    if (model.system.m() > 0) doc["B"] = matrix_to_json(model.system.B());
    if (model.inputs.has_inputs()) doc["A_u"] = matrix_to_json(*model.inputs.input_dynamics);
    return doc.dump(2) + "\n";
}

void save_model(const Benchmark& model, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DaeError(ErrorKind::invalid_argument, "cannot write " + path);
    out << serialize_model(model);
}

StarSet parse_initial_star(std::string_view text, const AutonomousDae& sys, const std::string& source)
{
    const json doc = parse_json(text, source);
    if (!doc.is_object()) fail(source, "", "top level must be an object");
    const Index dim = sys.dim();
    const Index n = sys.n_orig;
    const Index m = sys.m_orig;

    auto lift = [&](Matrix v, const char* field) -> Matrix {
        if (v.rows() == dim) return v;
        if (v.rows() == n && m > 0) {
            Matrix full = Matrix::Zero(dim, v.cols());
            full.topRows(n) = v;
            if (doc.contains("U0")) full.bottomRows(m) = parse_matrix(doc.at("U0"), m, v.cols(), source, "U0");
            return full;
        }
        fail(source, field, "expected " + std::to_string(dim) + " rows (or " + std::to_string(n) + " plus U0)");
    };

    const bool center_form = doc.contains("center");
    Matrix basis;
    if (center_form) {
        basis = lift(parse_matrix(require(doc, "generators", source), -1, -1, source, "generators"), "generators");
    } else {
        basis = lift(parse_matrix(require(doc, "V", source), -1, -1, source, "V"), "V");
    }
    const Index k = basis.cols();
    if (k < 1) fail(source, center_form ? "generators" : "V", "needs at least one column");

    Matrix c;
    Vector d;
    if (doc.contains("lower") || doc.contains("upper")) {
        const Vector lo = parse_vector(require(doc, "lower", source), k, source, "lower");
        const Vector hi = parse_vector(require(doc, "upper", source), k, source, "upper");
        c.resize(2 * k, k);
        c << Matrix::Identity(k, k), -Matrix::Identity(k, k);
        d.resize(2 * k);
        d << hi, -lo;
    } else {
        c = parse_matrix(require(doc, "C", source), -1, k, source, "C");
        d = parse_vector(require(doc, "d", source), c.rows(), source, "d");
    }

    try {
        if (center_form) {
            Vector center = parse_vector(doc.at("center"), -1, source, "center");
            if (center.size() == n && m > 0) {
                Vector full = Vector::Zero(dim);
                full.head(n) = center;
                if (doc.contains("u0")) full.tail(m) = parse_vector(doc.at("u0"), m, source, "u0");
                center = std::move(full);
            }
            if (center.size() != dim) fail(source, "center", "wrong length");
            return StarSet::from_center(center, basis, c, d);
        }
        return StarSet(std::move(basis), std::move(c), std::move(d));
    } catch (const DaeError& err) {
        if (err.kind() == ErrorKind::parse) throw;
        fail(source, "", err.what());
    }
}

StarSet load_initial_star(const std::string& path_or_alias, const AutonomousDae& sys, std::uint64_t seed,
                          const TolerancePolicy& tol)
{
    if (starts_with(path_or_alias, kBuiltin)) {
        const std::string name = path_or_alias.substr(kBuiltin.size());
        if (name == "rotating-masses" || name == "rotating-masses-rounded") {
            if (sys.dim() != 6) throw ParseError(path_or_alias, "", 0, "rotating-masses star needs the 6-state system");
            StarSet s = rotating_masses_initial_star();
            return name == "rotating-masses" ? s : s.with_basis(rotating_masses_rounded_basis());
        }
        if (starts_with(name, "consistent:")) {
            int k = 0;
            try {
                k = std::stoi(name.substr(11));
            } catch (const std::exception&) {
                throw ParseError(path_or_alias, "", 0, "bad column count");
            }
            if (k < 1) throw ParseError(path_or_alias, "", 0, "column count must be >= 1");
            return consistent_random_star(decouple_system(sys, tol), k, seed, tol);
        }
        throw ParseError(path_or_alias, "", 0, "unknown builtin initial set");
    }
    return parse_initial_star(read_text_file(path_or_alias), sys, path_or_alias);
}

UnsafeSpec parse_unsafe(std::string_view text, const std::string& source)
{
    const json doc = parse_json(text, source);
    UnsafeSpec spec;
    spec.G = parse_matrix(require(doc, "G", source), -1, -1, source, "G");
    if (spec.G.rows() < 1 || spec.G.cols() < 1) fail(source, "G", "needs at least one row and column");
    spec.f = parse_vector(require(doc, "f", source), spec.G.rows(), source, "f");
    if (doc.contains("on_original_state")) {
        if (!doc.at("on_original_state").is_boolean()) fail(source, "on_original_state", "expected a boolean");
        spec.on_original_state = doc.at("on_original_state").get<bool>();
    }
    return spec;
}

UnsafeSpec load_unsafe(const std::string& path_or_alias)
{
    if (path_or_alias == "builtin:rotating-masses-m2") return rotating_masses_unsafe_m2();
    if (path_or_alias == "builtin:rotating-masses-x4") return rotating_masses_unsafe_x4();
    if (starts_with(path_or_alias, kBuiltin)) throw ParseError(path_or_alias, "", 0, "unknown builtin unsafe set");
    return parse_unsafe(read_text_file(path_or_alias), path_or_alias);
}

Matrix load_directions(const std::string& path)
{
    const std::string text = read_text_file(path);
    const json doc = parse_json(text, path);
    Matrix d = parse_matrix(require(doc, "D", path), -1, -1, path, "D");
    if (d.rows() < 1 || d.cols() < 1) fail(path, "D", "needs at least one row and column");
    return d;
}

}  // namespace daereach
