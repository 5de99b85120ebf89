#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "channelforge/representations.hpp"

namespace channelforge {

using Json = nlohmann::ordered_json;

enum class RepKind { kraus, superop, choi, chi, stinespring };

std::string to_string(RepKind kind);
RepKind rep_kind_from_string(const std::string& name);

/// A channel in any of the five representations.
using Channel = std::variant<KrausRep, SuperOp, ChoiMatrix, ChiMatrix, StinespringRep>;

RepKind kind_of(const Channel& channel);
std::size_t channel_dx(const Channel& channel);
std::size_t channel_dy(const Channel& channel);

struct ChannelFile {
    Channel channel;
    Json metadata;  // tool version, rng name + seed, free-form notes
};

// Matrices are row-major nested arrays of [re, im] pairs. Numbers are
// written in shortest round-trip decimal form, so write-then-read
// reproduces every entry exactly and re-serialization is byte-stable.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json cvector_to_json(const CVector& v);
CVector cvector_from_json(const Json& j);

Json basis_to_json(const OperatorBasis& basis);
OperatorBasis basis_from_json(const Json& j);

Json convention_to_json(const VecConvention& conv);
VecConvention convention_from_json(const Json& j);

Json channel_to_json(const Channel& channel, Json metadata = Json::object());
ChannelFile channel_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho, Json metadata = Json::object());
DensityMatrix state_from_json(const Json& j, bool validate = true, double tol = kDefaultTol);

void write_channel_file(const std::filesystem::path& path, const Channel& channel,
                        Json metadata = Json::object());
ChannelFile read_channel_file(const std::filesystem::path& path);

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho,
                      Json metadata = Json::object());
DensityMatrix read_state_file(const std::filesystem::path& path, bool validate = true,
                              double tol = kDefaultTol);

}  // namespace channelforge
