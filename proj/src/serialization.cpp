#include "quasiline/serialization.hpp"

#include <filesystem>
#include <fstream>

namespace quasiline {

using nlohmann::json;

namespace {

constexpr const char* kStructureSchema = "quasiline/structure-v1";
constexpr const char* kDatumSchema = "quasiline/datum-v1";
constexpr const char* kQlineSchema = "quasiline/qline-v1";

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect_schema(const json& j, const char* schema) {
    if (!j.is_object() || j.value("schema", "") != schema)
        throw ParseError(std::string("expected schema ") + schema);
}

PackedTuple tuple_from_array(const json& arr, int arity) {
    PackedTuple t = 0;
    for (int s = 0; s < arity; ++s) t |= PackedTuple(arr.at(s).get<unsigned>()) << (kSlotBits * s);
    return t;
}

}  // namespace

json cyc_to_json(const CycNum& x) {
    json coeffs = json::array();
    for (const auto& r : x.coeffs()) coeffs.push_back(rational_to_string(r));
    return json{{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

CycNum cyc_from_json(const json& j) {
    unsigned conductor = j.at("conductor").get<unsigned>();
    std::vector<Rational> coeffs;
    for (const auto& s : j.at("coeffs")) coeffs.push_back(parse_rational(s.get<std::string>()));
    return CycNum::from_coeffs(conductor, std::move(coeffs));
}

json functional_to_json(const Functional& f) {
    json entries = json::array();
    // map iteration order is not stable: sort tuples for determinism
    std::vector<PackedTuple> keys;
    keys.reserve(f.values().size());
    for (const auto& [t, v] : f.values()) keys.push_back(t);
    std::sort(keys.begin(), keys.end());
    for (PackedTuple t : keys) {
        json row = json::array();
        for (int s = 0; s < f.arity(); ++s) row.push_back(tuple_slot(t, s));
        row.push_back(cyc_to_json(f.at(t)));
        entries.push_back(row);
    }
    return json{{"arity", f.arity()}, {"entries", entries}};
}

Functional functional_from_json(const json& j, unsigned dim) {
    int arity = j.at("arity").get<int>();
    Functional f(arity, dim);
    for (const auto& row : j.at("entries")) {
        PackedTuple t = tuple_from_array(row, arity);
        f.set(t, cyc_from_json(row.at(arity)));
    }
    return f;
}

json structure_to_json(const StructuredCoalgebra& H,
                       const std::map<std::string, const Functional*>& functionals) {
    json j;
    j["schema"] = kStructureSchema;
    j["conductor"] = H.conductor;
    j["dim"] = H.dim;
    j["basis_labels"] = H.labels;
    json delta = json::array();
    for (Idx i = 0; i < H.dim; ++i)
        for (const auto& dt : H.delta[i])
            delta.push_back(json::array({i, dt.j, dt.k, cyc_to_json(dt.c)}));
    j["delta"] = delta;
    json counit = json::array();
    for (const auto& c : H.counit) counit.push_back(cyc_to_json(c));
    j["counit"] = counit;
    json mul = json::array();
    for (Idx i = 0; i < H.dim; ++i)
        for (Idx k = 0; k < H.dim; ++k)
            for (const auto& [l, c] : H.mul_at(i, k))
                mul.push_back(json::array({i, k, l, cyc_to_json(c)}));
    j["mul"] = mul;
    json unit = json::array();
    for (const auto& c : H.unit) unit.push_back(cyc_to_json(c));
    j["unit"] = unit;
    if (!functionals.empty()) {
        json fs;
        for (const auto& [name, f] : functionals) fs[name] = functional_to_json(*f);
        j["functionals"] = fs;
    }
    return j;
}

StructuredCoalgebra structure_from_json(const json& j,
                                        std::map<std::string, Functional>* functionals) {
    expect_schema(j, kStructureSchema);
    StructuredCoalgebra H;
    H.conductor = j.at("conductor").get<unsigned>();
    H.dim = j.at("dim").get<unsigned>();
    if (H.dim == 0 || H.dim > kMaxDim) throw ParseError("dimension out of range");
    H.labels = j.at("basis_labels").get<std::vector<std::string>>();
    if (H.labels.size() != H.dim) throw ParseError("basis_labels length mismatch");
    H.delta.resize(H.dim);
    for (const auto& row : j.at("delta")) {
        unsigned i = row.at(0).get<unsigned>();
        if (i >= H.dim) throw ParseError("delta index out of range");
        H.delta[i].push_back(DeltaTerm{row.at(1).get<unsigned>(), row.at(2).get<unsigned>(),
                                       cyc_from_json(row.at(3))});
    }
    for (const auto& c : j.at("counit")) H.counit.push_back(cyc_from_json(c));
    if (H.counit.size() != H.dim) throw ParseError("counit length mismatch");
    H.mul.assign(static_cast<size_t>(H.dim) * H.dim, {});
    for (const auto& row : j.at("mul")) {
        unsigned i = row.at(0).get<unsigned>(), k = row.at(1).get<unsigned>();
        if (i >= H.dim || k >= H.dim) throw ParseError("mul index out of range");
        H.mul[static_cast<size_t>(i) * H.dim + k].push_back(
            {row.at(2).get<unsigned>(), cyc_from_json(row.at(3))});
    }
    for (const auto& c : j.at("unit")) H.unit.push_back(cyc_from_json(c));
    if (H.unit.size() != H.dim) throw ParseError("unit length mismatch");
    if (functionals && j.contains("functionals")) {
        for (const auto& [name, fj] : j.at("functionals").items())
            functionals->emplace(name, functional_from_json(fj, H.dim));
    }
    return H;
}

json dqb_to_json(const DualQuasiBialgebra& A) {
    return structure_to_json(A.H, {{"omega", &A.omega}, {"omega_inv", &A.omega_inv}});
}

DqbPtr dqb_from_json(const json& j, bool verify, unsigned jobs) {
    std::map<std::string, Functional> fs;
    StructuredCoalgebra H = structure_from_json(j, &fs);
    auto it = fs.find("omega");
    if (it == fs.end()) throw ParseError("structure file carries no omega functional");
    auto inv = fs.find("omega_inv");
    if (inv != fs.end())
        return make_dqb(std::move(H), std::move(it->second), std::move(inv->second), verify, jobs);
    Functional omega_inv = conv_inverse(it->second, H);
    return make_dqb(std::move(H), std::move(it->second), std::move(omega_inv), verify, jobs);
}

json datum_to_json(const QuasiYDDatum& D, const std::string& h_file_ref) {
    json j;
    j["schema"] = kDatumSchema;
    if (h_file_ref.empty()) j["H"] = dqb_to_json(*D.H);
    else j["H_file"] = h_file_ref;
    j["g"] = D.g;
    j["chi"] = functional_to_json(D.chi);
    return j;
}

QuasiYDDatum datum_from_json(const json& j, const std::string& base_dir, bool verify) {
    expect_schema(j, kDatumSchema);
    DqbPtr H;
    if (j.contains("H")) {
        H = dqb_from_json(j.at("H"), verify);
    } else {
        std::filesystem::path p = std::filesystem::path(base_dir) /
                                  j.at("H_file").get<std::string>();
        H = dqb_from_json(load_json(p.string()), verify);
    }
    Idx g = j.at("g").get<unsigned>();
    Functional chi = functional_from_json(j.at("chi"), H->H.dim);
    return make_datum(std::move(H), g, std::move(chi), verify);
}

json qline_to_json(const QuantumLine& R) {
    json j;
    j["schema"] = kQlineSchema;
    j["datum"] = datum_to_json(R.datum);
    j["N"] = R.N;
    j["var"] = R.var;
    json chis = json::array();
    for (const auto& f : R.chi_n) chis.push_back(functional_to_json(f));
    j["chi_n"] = chis;
    json prod = json::array();
    for (unsigned a = 0; a < R.N; ++a) {
        json row = json::array();
        for (unsigned b = 0; b < R.N; ++b) row.push_back(cyc_to_json(R.prod_coeff[a][b]));
        prod.push_back(row);
    }
    j["prod_coeff"] = prod;
    json beta = json::array();
    for (unsigned n = 0; n < R.N; ++n) {
        json row = json::array();
        for (unsigned i = 0; i <= n; ++i) row.push_back(cyc_to_json(R.beta[n][i]));
        beta.push_back(row);
    }
    j["beta"] = beta;
    json anti = json::array();
    for (const auto& c : R.antipode_scalar) anti.push_back(cyc_to_json(c));
    j["antipode_scalar"] = anti;
    return j;
}

QuantumLine qline_from_json(const json& j, const std::string& base_dir, bool verify) {
    expect_schema(j, kQlineSchema);
    QuasiYDDatum D = datum_from_json(j.at("datum"), base_dir, verify);
    QuantumLine R = build_quantum_line(D, j.value("var", "x"));
    if (R.N != j.at("N").get<unsigned>()) throw ParseError("qline file N mismatch");
    // cross-check the stored tables against the rebuilt ones
    for (unsigned a = 0; a < R.N; ++a)
        for (unsigned b = 0; b < R.N; ++b)
            if (!(cyc_from_json(j.at("prod_coeff").at(a).at(b)) == R.prod_coeff[a][b]))
                throw ParseError("qline file product table mismatch");
    for (unsigned n = 0; n < R.N; ++n)
        for (unsigned i = 0; i <= n; ++i)
            if (!(cyc_from_json(j.at("beta").at(n).at(i)) == R.beta[n][i]))
                throw ParseError("qline file coproduct table mismatch");
    return R;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace quasiline
