#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qbc/channel.hpp"

namespace qbc {

struct ChannelDocument {
  KrausChannel channel;
  ConnectionGraph graph;
};

// JSON channel document:
//   {"in_dims": [..], "out_dims": [..],
//    "connections": [{"sender": s, "receiver": r, "ref_dim": d}, ..],
//    "kraus": [ [[[re, im], ..], ..], .. ]}
// Throws ParseError for malformed text or fields and, unless
// require_complete is false, InvalidChannel when the Kraus set is not complete.
ChannelDocument read_channel(std::string_view text, bool require_complete = true);
ChannelDocument read_channel_file(const std::filesystem::path& path, bool require_complete = true);

// Doubles are written in shortest round-trip form, one Kraus row per line.
std::string write_channel(const KrausChannel& ch, const ConnectionGraph& graph);
void write_channel_file(const std::filesystem::path& path, const KrausChannel& ch,
                        const ConnectionGraph& graph);

}  // namespace qbc
