#include <wtw/frame.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "document.hpp"

namespace wtw
{

Vector FrameSpec::bracket(std::span<const Scalar> u, std::span<const Scalar> v) const
{
    Vector r = zero_vector(dimension, symbols);
    for (std::size_t i = 0; i < dimension; ++i) {
        if (u[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < dimension; ++j) {
            if (v[j].is_zero()) {
                continue;
            }
            const Scalar uv = u[i] * v[j];
            for (std::size_t k = 0; k < dimension; ++k) {
                if (!brackets(i, j, k).is_zero()) {
                    r[k] += uv * brackets(i, j, k);
                }
            }
        }
    }
    return r;
}

// --- loading ---------------------------------------------------------------

namespace
{

using detail::Section;
using detail::Value;

[[noreturn]] void parse_fail(int line, const std::string &what)
{
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

Scalar value_scalar(const Value &v, const SymbolSetPtr &symbols)
{
    if (v.kind == Value::Kind::Integer) {
        return Scalar::constant(symbols, Rational(mpz_class(v.text)));
    }
    if (v.kind == Value::Kind::String) {
        try {
            return parse_scalar(v.text, symbols);
        } catch (const ParseError &e) {
            parse_fail(v.line, e.what());
        }
    }
    parse_fail(v.line, std::string("expected a coefficient, found ") + v.kind_name());
}

Rational value_constant(const Value &v, const SymbolSetPtr &symbols, const std::string &what)
{
    const Scalar s = value_scalar(v, symbols);
    if (!s.is_constant()) {
        throw ValidationError(what + " must be a constant, got '" + s.str() + "'");
    }
    return s.constant_value();
}

std::vector<std::string> string_list(const Value &v, const std::string &key)
{
    if (v.kind != Value::Kind::Array) {
        parse_fail(v.line, "'" + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto &item : v.items) {
        if (item.kind != Value::Kind::String) {
            parse_fail(item.line, "'" + key + "' must be an array of strings");
        }
        out.push_back(item.text);
    }
    return out;
}

std::size_t basis_index(const std::vector<std::string> &basis, const std::string &name, int line)
{
    auto it = std::find(basis.begin(), basis.end(), name);
    if (it == basis.end()) {
        parse_fail(line, "unknown basis vector '" + name + "'");
    }
    return static_cast<std::size_t>(it - basis.begin());
}

const Section *find_section(const std::vector<Section> &doc, std::string_view name)
{
    for (const auto &s : doc) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

} // namespace

FrameSpec load_spec(std::string_view source)
{
    const auto doc = detail::parse_document(source);
    for (const auto &s : doc) {
        if (s.name != "frame" && s.name != "brackets" && s.name != "complex_structure" && s.name != "weyl_form") {
            parse_fail(s.line, "unknown section [" + s.name + "]");
        }
    }
    const Section *frame = find_section(doc, "frame");
    if (!frame) {
        throw ParseError("missing [frame] section");
    }

    FrameSpec spec;
    bool have_dim = false;
    bool have_symbols = false;
    std::vector<std::string> symbols;
    for (const auto &kv : frame->entries) {
        const Value &v = *kv.value;
        if (kv.key == "name") {
            if (v.kind != Value::Kind::String) {
                parse_fail(v.line, "'name' must be a string");
            }
            spec.name = v.text;
        } else if (kv.key == "dimension") {
            if (v.kind != Value::Kind::Integer) {
                parse_fail(v.line, "'dimension' must be an integer");
            }
            const long d = std::stol(v.text);
            if (d < 4 || d % 2 != 0 || d > 64) {
                throw ValidationError("dimension must be even and at least 4, got " + v.text);
            }
            spec.dimension = static_cast<std::size_t>(d);
            have_dim = true;
        } else if (kv.key == "symbols") {
            symbols = string_list(v, kv.key);
            have_symbols = true;
        } else if (kv.key == "basis") {
            spec.basis = string_list(v, kv.key);
        } else {
            parse_fail(kv.line, "unknown key '" + kv.key + "' in [frame]");
        }
    }
    if (!have_dim) {
        throw ParseError("[frame] is missing 'dimension'");
    }
    if (!have_symbols) {
        throw ParseError("[frame] is missing 'symbols'");
    }
    try {
        spec.symbols = make_symbols(symbols);
    } catch (const std::invalid_argument &e) {
        throw ValidationError(e.what());
    }
    const std::size_t n = spec.dimension;
    if (spec.basis.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            spec.basis.push_back("E" + std::to_string(i + 1));
        }
    }
    if (spec.basis.size() != n) {
        throw ValidationError("basis has " + std::to_string(spec.basis.size()) + " names for dimension " +
                              std::to_string(n));
    }
    for (const auto &b : spec.basis) {
        if (spec.symbols->contains(b)) {
            throw ValidationError("basis name '" + b + "' collides with a symbol");
        }
        if (std::count(spec.basis.begin(), spec.basis.end(), b) > 1) {
            throw ValidationError("duplicate basis name '" + b + "'");
        }
    }

    spec.brackets = Tensor<3>(n, spec.symbols);
    if (const Section *br = find_section(doc, "brackets")) {
        std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
        for (const auto &kv : br->entries) {
            const auto comma = kv.key.find(',');
            if (comma == std::string::npos) {
                parse_fail(kv.line, "bracket key must look like \"Ei,Ej\", got '" + kv.key + "'");
            }
            const auto i = basis_index(spec.basis, trim(std::string_view(kv.key).substr(0, comma)), kv.line);
            const auto j = basis_index(spec.basis, trim(std::string_view(kv.key).substr(comma + 1)), kv.line);
            if (i == j) {
                throw ValidationError("bracket [" + spec.basis[i] + "," + spec.basis[i] + "] must vanish");
            }
            if (seen[i][j] || seen[j][i]) {
                parse_fail(kv.line, "bracket of " + spec.basis[i] + " and " + spec.basis[j] + " given twice");
            }
            seen[i][j] = true;
            const Value &v = *kv.value;
            if (v.kind != Value::Kind::Table) {
                parse_fail(v.line, "bracket value must be an inline table");
            }
            for (const auto &term : v.table) {
                const auto k = basis_index(spec.basis, term.key, term.line);
                const Rational c = value_constant(*term.value, spec.symbols, "structure constant");
                spec.brackets(i, j, k) = Scalar::constant(spec.symbols, c);
                spec.brackets(j, i, k) = Scalar::constant(spec.symbols, -c);
            }
        }
    }

    const Section *cs = find_section(doc, "complex_structure");
    if (!cs) {
        throw ParseError("missing [complex_structure] section");
    }
    bool have_matrix = false;
    spec.J = Endo(n, spec.symbols);
    for (const auto &kv : cs->entries) {
        if (kv.key != "matrix") {
            parse_fail(kv.line, "unknown key '" + kv.key + "' in [complex_structure]");
        }
        const Value &m = *kv.value;
        if (m.kind != Value::Kind::Array || m.items.size() != n) {
            parse_fail(m.line, "complex structure must be an array of " + std::to_string(n) + " rows");
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Value &row = m.items[i];
            if (row.kind != Value::Kind::Array || row.items.size() != n) {
                parse_fail(row.line, "row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
            }
            for (std::size_t j = 0; j < n; ++j) {
                spec.J(i, j) =
                    Scalar::constant(spec.symbols, value_constant(row.items[j], spec.symbols, "complex structure entry"));
            }
        }
        have_matrix = true;
    }
    if (!have_matrix) {
        throw ParseError("[complex_structure] is missing 'matrix'");
    }

    spec.phi = zero_vector(n, spec.symbols);
    if (const Section *wf = find_section(doc, "weyl_form")) {
        for (const auto &kv : wf->entries) {
            const auto k = basis_index(spec.basis, kv.key, kv.line);
            spec.phi[k] = value_scalar(*kv.value, spec.symbols);
        }
    }

    validate(spec);
    return spec;
}

FrameSpec load_spec_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open spec file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_spec(ss.str());
}

// --- validation ------------------------------------------------------------

FrameResiduals frame_residuals(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &c = spec.brackets;
    FrameResiduals r;
    r.jacobi = Tensor<4>(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    Scalar s;
                    for (std::size_t m = 0; m < n; ++m) {
                        s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
                    }
                    r.jacobi(i, j, k, l) = s;
                }
            }
        }
    }
    const Endo id = identity_endo(n, spec.symbols);
    r.j_squared_plus_id = spec.J * spec.J + id;
    r.orthogonality = spec.J.transposed() * spec.J - id;
    return r;
}

void validate(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    if (n < 4 || n % 2 != 0) {
        throw ValidationError("dimension must be even and at least 4");
    }
    if (spec.J.dim() != n || spec.phi.size() != n || spec.brackets.dim() != n) {
        throw ValidationError("component arrays do not match the dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!spec.J(i, j).is_constant()) {
                throw ValidationError("complex structure entries must be constant");
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (!spec.brackets(i, j, k).is_constant()) {
                    throw ValidationError("structure constants must be constant");
                }
                if (spec.brackets(i, j, k) != -spec.brackets(j, i, k)) {
                    throw ValidationError("structure constants are not antisymmetric");
                }
            }
        }
    }
    const auto r = frame_residuals(spec);
    for (std::size_t p = 0; p < r.jacobi.flat().size(); ++p) {
        if (!r.jacobi.flat()[p].is_zero()) {
            const auto idx = r.jacobi.index_of(p);
            throw ValidationError("Jacobi identity fails for (" + spec.basis[idx[0]] + ", " + spec.basis[idx[1]] +
                                  ", " + spec.basis[idx[2]] + ")");
        }
    }
    if (!r.j_squared_plus_id.is_zero()) {
        throw ValidationError("complex structure does not satisfy J^2 = -I");
    }
    if (!r.orthogonality.is_zero()) {
        throw ValidationError("complex structure is not orthogonal (J^T J != I)");
    }
}

FrameSpec with_phi(const FrameSpec &spec, Vector phi)
{
    if (phi.size() != spec.dimension) {
        throw std::invalid_argument("with_phi: wrong length");
    }
    FrameSpec r = spec;
    for (auto &x : phi) {
        x = x.embed(spec.symbols);
    }
    r.phi = std::move(phi);
    return r;
}

FrameSpec substitute(const FrameSpec &spec, const Assignment &assignment)
{
    for (const auto &[name, value] : assignment) {
        if (!spec.symbols->contains(name)) {
            throw SymbolMismatch("unknown symbol '" + name + "'");
        }
    }
    FrameSpec r = spec;
    r.phi = substitute(spec.phi, assignment);
    return r;
}

// --- builtins --------------------------------------------------------------

std::vector<std::string> builtin_names()
{
    return {"inoue-s0", "kodaira"};
}

std::string builtin_document(std::string_view name, std::optional<Signs> signs)
{
    if (name == "inoue-s0") {
        if (signs) {
            throw std::invalid_argument("builtin 'inoue-s0' takes no signs");
        }
        return R"(# Inoue surface of type S^0, left-invariant lcK frame.
[frame]
name = "inoue-s0"
dimension = 4
symbols = ["a1", "a2", "a3", "a4"]
basis = ["E1", "E2", "E3", "E4"]

[brackets]
"E1,E2" = { "E1" = "-1" }
"E2,E3" = { "E3" = "-1/2" }
"E2,E4" = { "E4" = "-1/2" }

[complex_structure]
# row-major; column j holds the components of J(E_j)
matrix = [
  [0, -1, 0, 0],
  [1, 0, 0, 0],
  [0, 0, 0, -1],
  [0, 0, 1, 0],
]

[weyl_form]
E1 = "a1"
E2 = "a2"
E3 = "a3"
E4 = "a4"
)";
    }
    if (name == "kodaira") {
        if (!signs) {
            throw std::invalid_argument("builtin 'kodaira' requires signs (e1,e2)");
        }
        const auto [e1, e2] = *signs;
        if ((e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) {
            throw std::invalid_argument("kodaira signs must be +1 or -1");
        }
        auto s = [](int v) { return std::to_string(v); };
        std::ostringstream os;
        os << "# Primary Kodaira surface, J A1 = e1 A2, J A3 = e2 A4 with (e1, e2) = (" << s(e1) << ", " << s(e2)
           << ").\n"
           << "[frame]\n"
           << "name = \"kodaira(" << s(e1) << "," << s(e2) << ")\"\n"
           << "dimension = 4\n"
           << "symbols = [\"a1\", \"a2\", \"a3\", \"a4\"]\n"
           << "basis = [\"A1\", \"A2\", \"A3\", \"A4\"]\n\n"
           << "[brackets]\n"
           << "\"A1,A2\" = { \"A4\" = \"-2\" }\n\n"
           << "[complex_structure]\n"
           << "matrix = [\n"
           << "  [0, " << s(-e1) << ", 0, 0],\n"
           << "  [" << s(e1) << ", 0, 0, 0],\n"
           << "  [0, 0, 0, " << s(-e2) << "],\n"
           << "  [0, 0, " << s(e2) << ", 0],\n"
           << "]\n\n"
           << "[weyl_form]\n"
           << "A1 = \"a1\"\nA2 = \"a2\"\nA3 = \"a3\"\nA4 = \"a4\"\n";
        return os.str();
    }
    throw std::invalid_argument("unknown builtin '" + std::string(name) + "'");
}

FrameSpec builtin(std::string_view name, std::optional<Signs> signs)
{
    return load_spec(builtin_document(name, signs));
}

std::string to_document(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    std::ostringstream os;
    auto list = [&](const std::vector<std::string> &v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? ", " : "") << detail::quote(v[i]);
        }
        os << "]\n";
    };
    os << "[frame]\n";
    if (!spec.name.empty()) {
        os << "name = " << detail::quote(spec.name) << '\n';
    }
    os << "dimension = " << n << '\n' << "symbols = ";
    list(spec.symbols->names());
    os << "basis = ";
    list(spec.basis);
    os << "\n[brackets]\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::string terms;
            for (std::size_t k = 0; k < n; ++k) {
                if (!spec.brackets(i, j, k).is_zero()) {
                    terms += (terms.empty() ? "" : ", ") + detail::quote(spec.basis[k]) + " = " +
                             detail::quote(spec.brackets(i, j, k).str());
                }
            }
            if (!terms.empty()) {
                os << detail::quote(spec.basis[i] + "," + spec.basis[j]) << " = { " << terms << " }\n";
            }
        }
    }
    os << "\n[complex_structure]\nmatrix = [\n";
    for (std::size_t i = 0; i < n; ++i) {
        os << "  [";
        for (std::size_t j = 0; j < n; ++j) {
            os << (j ? ", " : "") << detail::quote(spec.J(i, j).str());
        }
        os << "],\n";
    }
    os << "]\n\n[weyl_form]\n";
    for (std::size_t k = 0; k < n; ++k) {
        if (!spec.phi[k].is_zero()) {
            os << spec.basis[k] << " = " << detail::quote(spec.phi[k].str()) << '\n';
        }
    }
    return os.str();
}

// --- exterior calculus -----------------------------------------------------

TwoForm d_oneform(const FrameSpec &spec, std::span<const Scalar> omega)
{
    const std::size_t n = spec.dimension;
    TwoForm f(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s;
            for (std::size_t k = 0; k < n; ++k) {
                if (!spec.brackets(i, j, k).is_zero()) {
                    s -= spec.brackets(i, j, k) * omega[k];
                }
            }
            f(i, j) = s;
        }
    }
    return f;
}

ThreeForm d_twoform(const FrameSpec &spec, const TwoForm &form)
{
    const std::size_t n = spec.dimension;
    const auto &c = spec.brackets;
    ThreeForm r(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Scalar s;
                for (std::size_t m = 0; m < n; ++m) {
                    if (!c(i, j, m).is_zero()) {
                        s -= c(i, j, m) * form(m, k);
                    }
                    if (!c(i, k, m).is_zero()) {
                        s += c(i, k, m) * form(m, j);
                    }
                    if (!c(j, k, m).is_zero()) {
                        s -= c(j, k, m) * form(m, i);
                    }
                }
                r(i, j, k) = s;
            }
        }
    }
    return r;
}

Scalar eval_on_bivector(const TwoForm &form, const Bivector &b)
{
    Scalar s;
    for (std::size_t i = 0; i < form.dim(); ++i) {
        for (std::size_t j = i + 1; j < form.dim(); ++j) {
            if (!b(i, j).is_zero() && !form(i, j).is_zero()) {
                s += b(i, j) * form(i, j);
            }
        }
    }
    return s;
}

Vector sharp(const FrameSpec &spec, std::span<const Scalar> omega)
{
    if (omega.size() != spec.dimension) {
        throw std::invalid_argument("sharp: wrong length");
    }
    return Vector(omega.begin(), omega.end());
}

Bivector wedge(std::span<const Scalar> u, std::span<const Scalar> v)
{
    const std::size_t n = u.size();
    Bivector b(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = u[i] * v[j] - u[j] * v[i];
        }
    }
    return b;
}

TwoForm wedge_forms(std::span<const Scalar> alpha, std::span<const Scalar> beta)
{
    const std::size_t n = alpha.size();
    TwoForm f(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            f(i, j) = alpha[i] * beta[j] - alpha[j] * beta[i];
        }
    }
    return f;
}

ThreeForm wedge_forms(std::span<const Scalar> alpha, const TwoForm &form)
{
    const std::size_t n = alpha.size();
    ThreeForm r(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                r(i, j, k) = alpha[i] * form(j, k) - alpha[j] * form(i, k) + alpha[k] * form(i, j);
            }
        }
    }
    return r;
}

Scalar bivector_metric(const Bivector &a, const Bivector &b)
{
    Scalar s;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            if (!a(i, j).is_zero() && !b(i, j).is_zero()) {
                s += a(i, j) * b(i, j);
            }
        }
    }
    return s / Rational(2);
}

Bivector wedge_iso(const Endo &a)
{
    if (!a.is_antisymmetric()) {
        throw std::invalid_argument("wedge_iso: endomorphism is not skew");
    }
    const std::size_t n = a.dim();
    Bivector b(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = a(j, i);
        }
    }
    return b;
}

} // namespace wtw
