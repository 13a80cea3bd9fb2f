#include "onecopy/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace onecopy {

using nlohmann::json;

namespace {

json matrix_to_pairs(const Eigen::MatrixXcd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

Eigen::MatrixXcd pairs_to_matrix(const json& j, const std::string& what) {
    if (!j.is_array()) throw IoError(what + ": matrix must be an array");
    Eigen::Index dim = 1;
    while (dim * dim < static_cast<Eigen::Index>(j.size())) ++dim;
    if (dim * dim != static_cast<Eigen::Index>(j.size()))
        throw IoError(what + ": matrix entry count " +
                      std::to_string(j.size()) + " is not a perfect square");
    Eigen::MatrixXcd m(dim, dim);
    Eigen::Index idx = 0;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw IoError(what + ": matrix entries must be [re, im] pairs");
        m(idx / dim, idx % dim) =
            cplx(e[0].get<double>(), e[1].get<double>());
        ++idx;
    }
    return m;
}

const json& need(const json& j, const char* field, const std::string& what) {
    auto it = j.find(field);
    if (it == j.end())
        throw IoError(what + ": missing field '" + std::string(field) + "'");
    return *it;
}

}  // namespace

json circuit_to_json(const LayeredCircuit& c) {
    json layers = json::array();
    for (const Layer& layer : c.layers) {
        json gates = json::array();
        for (const Gate& g : layer.gates)
            gates.push_back({{"qubits", g.qubits},
                             {"matrix", matrix_to_pairs(g.matrix)}});
        layers.push_back(std::move(gates));
    }
    return {{"n", c.n}, {"layers", std::move(layers)}};
}

LayeredCircuit circuit_from_json(const json& j) {
    LayeredCircuit c;
    c.n = need(j, "n", "circuit").get<int>();
    const json& layers = need(j, "layers", "circuit");
    if (!layers.is_array()) throw IoError("circuit: 'layers' must be an array");
    for (const auto& jl : layers) {
        Layer layer;
        for (const auto& jg : jl) {
            Gate g;
            g.qubits = need(jg, "qubits", "gate").get<std::vector<int>>();
            g.matrix = pairs_to_matrix(need(jg, "matrix", "gate"), "gate");
            const Eigen::Index dim =
                Eigen::Index(1) << static_cast<Eigen::Index>(g.qubits.size());
            if (g.matrix.rows() != dim)
                throw IoError("gate: matrix is " + std::to_string(g.matrix.rows()) +
                              "x" + std::to_string(g.matrix.cols()) + " but " +
                              std::to_string(g.qubits.size()) +
                              " qubits are listed");
            layer.gates.push_back(std::move(g));
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

json channel_to_json(const TwoQubitChannel& ch) {
    json kraus = json::array();
    for (const auto& k : ch.kraus) kraus.push_back(matrix_to_pairs(k));
    return {{"kraus", std::move(kraus)}};
}

TwoQubitChannel channel_from_json(const json& j) {
    TwoQubitChannel ch;
    const json& kraus = need(j, "kraus", "channel");
    if (!kraus.is_array() || kraus.empty())
        throw IoError("channel: 'kraus' must be a nonempty array");
    for (const auto& jk : kraus) {
        const Eigen::MatrixXcd m = pairs_to_matrix(jk, "kraus operator");
        if (m.rows() != 4)
            throw IoError("channel: Kraus operators must be 4x4");
        ch.kraus.push_back(m);
    }
    return ch;
}

json observable_to_json(const Observable& o) {
    json terms = json::array();
    for (const Term& t : o.terms)
        terms.push_back({{"support", t.support}, {"coeff", t.coeff}});
    return {{"basis", o.basis}, {"terms", std::move(terms)}};
}

Observable observable_from_json(const json& j, bool renormalize) {
    std::string basis = need(j, "basis", "observable").get<std::string>();
    std::vector<Term> terms;
    for (const auto& jt : need(j, "terms", "observable")) {
        Term t;
        t.support = need(jt, "support", "term").get<std::vector<int>>();
        t.coeff = need(jt, "coeff", "term").get<double>();
        terms.push_back(std::move(t));
    }
    return make_observable(std::move(basis), std::move(terms), renormalize);
}

json process_to_json(const markov::MarkovProcess& m) {
    json layers = json::array();
    for (const auto& layer : m.layers) {
        json gates = json::array();
        for (const markov::MarkovGate& g : layer) {
            json rows = json::array();
            for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
                json row = json::array();
                for (Eigen::Index c = 0; c < g.matrix.cols(); ++c)
                    row.push_back(g.matrix(r, c));
                rows.push_back(std::move(row));
            }
            gates.push_back({{"coords", {g.i, g.j}}, {"matrix", std::move(rows)}});
        }
        layers.push_back(std::move(gates));
    }
    return {{"alphabets", m.alphabets}, {"layers", std::move(layers)}};
}

markov::MarkovProcess process_from_json(const json& j) {
    markov::MarkovProcess m;
    m.alphabets = need(j, "alphabets", "process").get<std::vector<int>>();
    for (const auto& jl : need(j, "layers", "process")) {
        std::vector<markov::MarkovGate> layer;
        for (const auto& jg : jl) {
            markov::MarkovGate g;
            const auto coords =
                need(jg, "coords", "markov gate").get<std::vector<int>>();
            if (coords.size() != 2)
                throw IoError("markov gate: 'coords' must list two coordinates");
            g.i = coords[0];
            g.j = coords[1];
            const json& rows = need(jg, "matrix", "markov gate");
            const std::size_t dim = rows.size();
            g.matrix.resize(dim, dim);
            std::size_t r = 0;
            for (const auto& row : rows) {
                if (row.size() != dim)
                    throw IoError("markov gate: matrix must be square");
                std::size_t c = 0;
                for (const auto& v : row) g.matrix(r, c++) = v.get<double>();
                ++r;
            }
            layer.push_back(std::move(g));
        }
        m.layers.push_back(std::move(layer));
    }
    markov::validate_process(m);
    return m;
}

json functional_to_json(const markov::LinearFunctional& f) {
    json terms = json::array();
    for (const markov::FunctionalTerm& t : f.terms)
        terms.push_back({{"support", t.support},
                         {"coeff", t.coeff},
                         {"table", t.table}});
    return {{"alphabets", f.alphabets}, {"terms", std::move(terms)}};
}

markov::LinearFunctional functional_from_json(const json& j) {
    markov::LinearFunctional f;
    f.alphabets = need(j, "alphabets", "functional").get<std::vector<int>>();
    for (const auto& jt : need(j, "terms", "functional")) {
        markov::FunctionalTerm t;
        t.support = need(jt, "support", "term").get<std::vector<int>>();
        t.coeff = need(jt, "coeff", "term").get<double>();
        t.table = need(jt, "table", "term").get<std::vector<double>>();
        f.terms.push_back(std::move(t));
    }
    markov::validate_functional(f);
    return f;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based offset into the input
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw IoError(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

LayeredCircuit load_circuit(const std::string& path) {
    return circuit_from_json(load_json_file(path));
}

TwoQubitChannel load_channel(const std::string& path) {
    return channel_from_json(load_json_file(path));
}

Observable load_observable(const std::string& path, bool renormalize) {
    return observable_from_json(load_json_file(path), renormalize);
}

markov::MarkovProcess load_process(const std::string& path) {
    return process_from_json(load_json_file(path));
}

markov::LinearFunctional load_functional(const std::string& path) {
    return functional_from_json(load_json_file(path));
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof chunk)) break;
    }
    return hex64(h);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_shots_csv(const std::string& path, const std::vector<Shot>& shots,
                     const std::string& backend) {
    if (shots.empty()) throw DomainError("no shots to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    const int n = static_cast<int>(shots.front().values.size());
    for (int q = 0; q < n; ++q) out << (q ? "," : "") << "q" << q;
    out << "\n";
    for (const Shot& s : shots) {
        for (int q = 0; q < n; ++q)
            out << (q ? "," : "") << (s.values[q] > 0 ? "+1" : "-1");
        out << "\n";
    }
    out.close();

    json sidecar = {{"seed", shots.front().seed},
                    {"backend", backend},
                    {"basis", shots.front().basis}};
    std::ofstream meta(path + ".json", std::ios::binary);
    if (!meta) throw IoError("cannot write " + path + ".json");
    meta << sidecar.dump(2) << "\n";
}

std::vector<Shot> read_shots_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string basis;
    std::uint64_t seed = 0;
    {
        std::ifstream meta(path + ".json", std::ios::binary);
        if (meta) {
            json sidecar = json::parse(meta, nullptr, true, true);
            basis = sidecar.value("basis", "");
            seed = sidecar.value("seed", std::uint64_t(0));
        }
    }

    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": missing header row");
    std::vector<Shot> shots;
    std::uint64_t index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Shot s;
        s.basis = basis;
        s.seed = seed;
        s.index = index++;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            const int v = std::stoi(cell);
            if (v != 1 && v != -1)
                throw IoError(path + ": shot values must be +1 or -1");
            s.values.push_back(static_cast<std::int8_t>(v));
        }
        shots.push_back(std::move(s));
    }
    return shots;
}

}  // namespace onecopy
