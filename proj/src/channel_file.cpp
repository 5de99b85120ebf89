#include "channelforge/channel_file.hpp"

#include <fstream>
#include <sstream>

#include "channelforge/errors.hpp"

namespace channelforge {

namespace {

constexpr const char* kChannelFormat = "channelforge/channel-v1";
constexpr const char* kStateFormat = "channelforge/state-v1";

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError("parse error: " + what); }

const Json& require_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t require_dim(const Json& j, const char* key) {
    const Json& f = require_field(j, key);
    if (!f.is_number_unsigned() || f.get<std::uint64_t>() == 0) {
        parse_fail(std::string("field '") + key + "' must be a positive integer");
    }
    return f.get<std::size_t>();
}

complexd entry_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_fail("complex entries must be [re, im] number pairs");
    }
    const complexd e(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
        parse_fail("complex entries must be finite");
    }
    return e;
}

}  // namespace

std::string to_string(RepKind kind) {
    switch (kind) {
        case RepKind::kraus: return "kraus";
        case RepKind::superop: return "superop";
        case RepKind::choi: return "choi";
        case RepKind::chi: return "chi";
        case RepKind::stinespring: return "stinespring";
    }
    throw DomainError("to_string: bad RepKind");
}

RepKind rep_kind_from_string(const std::string& name) {
    if (name == "kraus") return RepKind::kraus;
    if (name == "superop") return RepKind::superop;
    if (name == "choi") return RepKind::choi;
    if (name == "chi") return RepKind::chi;
    if (name == "stinespring") return RepKind::stinespring;
    throw ParseError("unknown representation '" + name + "'");
}

RepKind kind_of(const Channel& channel) {
    return std::visit(
        [](const auto& rep) {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, KrausRep>) return RepKind::kraus;
            else if constexpr (std::is_same_v<T, SuperOp>) return RepKind::superop;
            else if constexpr (std::is_same_v<T, ChoiMatrix>) return RepKind::choi;
            else if constexpr (std::is_same_v<T, ChiMatrix>) return RepKind::chi;
            else return RepKind::stinespring;
        },
        channel);
}

std::size_t channel_dx(const Channel& channel) {
    return std::visit([](const auto& rep) { return rep.dx(); }, channel);
}

std::size_t channel_dy(const Channel& channel) {
    return std::visit([](const auto& rep) { return rep.dy(); }, channel);
}

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) parse_fail("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) parse_fail("matrix rows must be non-empty arrays");
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) parse_fail("matrix rows have ragged sizes");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
    }
    return m;
}

Json cvector_to_json(const CVector& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(Json::array({e.real(), e.imag()}));
    return out;
}

CVector cvector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) parse_fail("vector must be a non-empty array");
    CVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(entry_from_json(e));
    return v;
}

Json basis_to_json(const OperatorBasis& basis) {
    Json out = Json::object();
    out["label"] = basis.label();
    if (basis.label() == "elementary") {
        out["dx"] = basis.dx();
        out["dy"] = basis.dy();
        // Recover the ordering by looking at where E_00's partner sits.
        const OperatorBasis col = OperatorBasis::elementary(basis.dx(), basis.dy());
        out["ordering"] = (basis == col) ? "col" : "row";
        return out;
    }
    if (basis.label() == "pauli") {
        std::size_t n = 0;
        for (std::size_t d = basis.dx(); d > 1; d /= 2) ++n;
        out["n_qubits"] = n;
        return out;
    }
    out["dx"] = basis.dx();
    out["dy"] = basis.dy();
    Json elems = Json::array();
    for (const auto& e : basis.elements()) elems.push_back(matrix_to_json(e));
    out["elements"] = std::move(elems);
    return out;
}

OperatorBasis basis_from_json(const Json& j) {
    if (!j.is_object()) parse_fail("basis must be an object");
    const std::string label = require_field(j, "label").get<std::string>();
    if (label == "elementary") {
        const std::size_t dx = require_dim(j, "dx");
        const std::size_t dy = require_dim(j, "dy");
        const std::string ordering = require_field(j, "ordering").get<std::string>();
        if (ordering == "col") return OperatorBasis::elementary(dx, dy);
        if (ordering == "row") return OperatorBasis::elementary(dx, dy, ElementaryOrdering::row);
        parse_fail("elementary basis ordering must be 'col' or 'row'");
    }
    if (label == "pauli") {
        return OperatorBasis::pauli(require_dim(j, "n_qubits"));
    }
    if (label == "custom") {
        const Json& elems = require_field(j, "elements");
        if (!elems.is_array() || elems.empty()) parse_fail("custom basis needs elements");
        std::vector<CMatrix> mats;
        mats.reserve(elems.size());
        for (const auto& e : elems) mats.push_back(matrix_from_json(e));
        try {
            return OperatorBasis(std::move(mats));
        } catch (const DomainError& err) {
            parse_fail(err.what());
        }
    }
    parse_fail("unknown basis label '" + label + "'");
}

Json convention_to_json(const VecConvention& conv) {
    switch (conv.kind()) {
        case VecConvention::Kind::col: return Json("col");
        case VecConvention::Kind::row: return Json("row");
        case VecConvention::Kind::basis: break;
    }
    Json out = Json::object();
    out["kind"] = "basis";
    out["basis"] = basis_to_json(conv.basis());
    return out;
}

VecConvention convention_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "col") return VecConvention::col();
        if (s == "row") return VecConvention::row();
        parse_fail("vec convention must be 'col', 'row', or a basis object");
    }
    if (j.is_object() && j.contains("basis")) {
        return VecConvention::in_basis(basis_from_json(j["basis"]));
    }
    parse_fail("malformed vec convention");
}

Json channel_to_json(const Channel& channel, Json metadata) {
    Json out = Json::object();
    out["format"] = kChannelFormat;
    out["representation"] = to_string(kind_of(channel));
    out["dx"] = channel_dx(channel);
    out["dy"] = channel_dy(channel);
    Json data = Json::object();
    std::visit(
        [&](const auto& rep) {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, KrausRep>) {
                Json ops = Json::array();
                for (const auto& k : rep.ops()) ops.push_back(matrix_to_json(k));
                data["kraus_ops"] = std::move(ops);
            } else if constexpr (std::is_same_v<T, SuperOp>) {
                out["vec_convention"] = convention_to_json(rep.conv());
                data["matrix"] = matrix_to_json(rep.mat());
            } else if constexpr (std::is_same_v<T, ChoiMatrix>) {
                out["choi_convention"] =
                    rep.convention() == ChoiConvention::col_lambda ? "col" : "row";
                data["matrix"] = matrix_to_json(rep.mat());
            } else if constexpr (std::is_same_v<T, ChiMatrix>) {
                out["basis"] = basis_to_json(rep.basis());
                data["matrix"] = matrix_to_json(rep.mat());
            } else {
                out["denv"] = rep.denv();
                data["isometry"] = matrix_to_json(rep.a());
                if (rep.env_state()) data["env_state"] = cvector_to_json(*rep.env_state());
                if (rep.restricted_unitary()) {
                    data["restricted_unitary"] = matrix_to_json(*rep.restricted_unitary());
                }
            }
        },
        channel);
    out["data"] = std::move(data);
    out["metadata"] = std::move(metadata);
    return out;
}

ChannelFile channel_from_json(const Json& j) {
    try {
        if (!j.is_object()) parse_fail("top level must be an object");
        if (require_field(j, "format").get<std::string>() != kChannelFormat) {
            parse_fail("unrecognized channel file format");
        }
        const RepKind kind = rep_kind_from_string(require_field(j, "representation"));
        const std::size_t dx = require_dim(j, "dx");
        const std::size_t dy = require_dim(j, "dy");
        const Json& data = require_field(j, "data");
        Json metadata = j.contains("metadata") ? j["metadata"] : Json::object();

        switch (kind) {
            case RepKind::kraus: {
                const Json& ops = require_field(data, "kraus_ops");
                if (!ops.is_array() || ops.empty()) parse_fail("kraus_ops must be non-empty");
                std::vector<CMatrix> mats;
                mats.reserve(ops.size());
                for (const auto& o : ops) mats.push_back(matrix_from_json(o));
                KrausRep rep(std::move(mats));
                if (rep.dx() != dx || rep.dy() != dy) {
                    parse_fail("kraus operator shapes disagree with declared dx/dy");
                }
                return ChannelFile{Channel(std::move(rep)), std::move(metadata)};
            }
            case RepKind::superop: {
                VecConvention conv = convention_from_json(require_field(j, "vec_convention"));
                SuperOp rep(matrix_from_json(require_field(data, "matrix")), std::move(conv), dx,
                            dy);
                return ChannelFile{Channel(std::move(rep)), std::move(metadata)};
            }
            case RepKind::choi: {
                const std::string conv = require_field(j, "choi_convention").get<std::string>();
                if (conv != "col" && conv != "row") {
                    parse_fail("choi_convention must be 'col' or 'row'");
                }
                ChoiMatrix rep(matrix_from_json(require_field(data, "matrix")),
                               conv == "col" ? ChoiConvention::col_lambda
                                             : ChoiConvention::row_lambda,
                               dx, dy);
                return ChannelFile{Channel(std::move(rep)), std::move(metadata)};
            }
            case RepKind::chi: {
                OperatorBasis basis = basis_from_json(require_field(j, "basis"));
                if (basis.dx() != dx || basis.dy() != dy) {
                    parse_fail("chi basis dimensions disagree with declared dx/dy");
                }
                ChiMatrix rep(matrix_from_json(require_field(data, "matrix")), std::move(basis));
                return ChannelFile{Channel(std::move(rep)), std::move(metadata)};
            }
            case RepKind::stinespring: {
                const std::size_t denv = require_dim(j, "denv");
                std::optional<CVector> env_state;
                if (data.contains("env_state")) {
                    env_state = cvector_from_json(data["env_state"]);
                }
                std::optional<CMatrix> u0;
                if (data.contains("restricted_unitary")) {
                    u0 = matrix_from_json(data["restricted_unitary"]);
                }
                StinespringRep rep(matrix_from_json(require_field(data, "isometry")), dx, dy,
                                   denv, std::move(env_state), std::move(u0));
                return ChannelFile{Channel(std::move(rep)), std::move(metadata)};
            }
        }
        parse_fail("unreachable");
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        // Well-formedness failures from the representation constructors.
        parse_fail(e.what());
    } catch (const Json::exception& e) {
        parse_fail(e.what());
    }
}

Json state_to_json(const DensityMatrix& rho, Json metadata) {
    Json out = Json::object();
    out["format"] = kStateFormat;
    out["dim"] = rho.dim();
    out["matrix"] = matrix_to_json(rho.mat());
    out["metadata"] = std::move(metadata);
    return out;
}

DensityMatrix state_from_json(const Json& j, bool validate, double tol) {
    try {
        if (!j.is_object()) parse_fail("top level must be an object");
        if (require_field(j, "format").get<std::string>() != kStateFormat) {
            parse_fail("unrecognized state file format");
        }
        const std::size_t dim = require_dim(j, "dim");
        CMatrix m = matrix_from_json(require_field(j, "matrix"));
        if (m.rows() != dim || m.cols() != dim) {
            parse_fail("state matrix shape disagrees with declared dim");
        }
        return DensityMatrix(std::move(m), validate, tol);
    } catch (const ParseError&) {
        throw;
    } catch (const Json::exception& e) {
        parse_fail(e.what());
    }
}

namespace {

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << "\n";
}

}  // namespace

void write_channel_file(const std::filesystem::path& path, const Channel& channel,
                        Json metadata) {
    write_json_file(path, channel_to_json(channel, std::move(metadata)));
}

ChannelFile read_channel_file(const std::filesystem::path& path) {
    return channel_from_json(read_json_file(path));
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho,
                      Json metadata) {
    write_json_file(path, state_to_json(rho, std::move(metadata)));
}

DensityMatrix read_state_file(const std::filesystem::path& path, bool validate, double tol) {
    return state_from_json(read_json_file(path), validate, tol);
}

}  // namespace channelforge
