#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "georeason/geometry.hpp"

namespace georeason {

// Binary PBM (P4), 1 = foreground, rows padded to whole bytes, MSB first.
std::string encode_pbm(const BinaryMask& m);
BinaryMask decode_pbm(std::string_view bytes);

// Uncompressed run-length encoding, column-major, first run counts
// background pixels (may be 0): {"size":[H,W],"counts":[...]}.
nlohmann::json encode_rle(const BinaryMask& m);
BinaryMask decode_rle(const nlohmann::json& j);

// Dispatch on extension: .pbm -> P4, .json -> RLE. MaskIoError / IoError on
// malformed content or unreadable paths.
void save_mask(const BinaryMask& m, const std::filesystem::path& path);
BinaryMask load_mask(const std::filesystem::path& path);

}  // namespace georeason
