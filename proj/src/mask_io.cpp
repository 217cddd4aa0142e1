#include "georeason/mask_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace georeason {

std::string encode_pbm(const BinaryMask& m) {
  std::string out = "P4\n" + std::to_string(m.width()) + " " + std::to_string(m.height()) + "\n";
  const int row_bytes = (m.width() + 7) / 8;
  for (int r = 0; r < m.height(); ++r) {
    for (int byte = 0; byte < row_bytes; ++byte) {
      unsigned char packed = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const int c = byte * 8 + bit;
        if (c < m.width() && m.at(r, c)) {
          packed |= static_cast<unsigned char>(0x80 >> bit);
        }
      }
      out.push_back(static_cast<char>(packed));
    }
  }
  return out;
}

namespace {

// Reads one PBM header token, skipping whitespace and '#' comments.
std::string next_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const char ch = bytes[pos];
    if (ch == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#') {
    tok.push_back(bytes[pos++]);
  }
  return tok;
}

int parse_dim(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw MaskIoError("PBM header dimension is not a positive integer: '" + tok + "'");
  }
  const long v = std::stol(tok);
  if (v <= 0 || v > 1 << 20) {
    throw MaskIoError("PBM dimension out of range: " + tok);
  }
  return static_cast<int>(v);
}

}  // namespace

BinaryMask decode_pbm(std::string_view bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P4") {
    throw MaskIoError("not a binary PBM (missing P4 magic)");
  }
  const int width = parse_dim(next_token(bytes, pos));
  const int height = parse_dim(next_token(bytes, pos));
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw MaskIoError("PBM header must end with a whitespace byte");
  }
  ++pos;
  const std::size_t row_bytes = (width + 7) / 8;
  if (bytes.size() - pos < row_bytes * height) {
    throw MaskIoError("PBM raster truncated");
  }
  BinaryMask m(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const unsigned char packed = bytes[pos + r * row_bytes + c / 8];
      m.set(r, c, (packed >> (7 - c % 8)) & 1);
    }
  }
  return m;
}

nlohmann::json encode_rle(const BinaryMask& m) {
  std::vector<std::int64_t> counts;
  bool run_value = false;  // first run counts background
  std::int64_t run = 0;
  for (int c = 0; c < m.width(); ++c) {
    for (int r = 0; r < m.height(); ++r) {
      const bool v = m.at(r, c);
      if (v == run_value) {
        ++run;
      } else {
        counts.push_back(run);
        run_value = v;
        run = 1;
      }
    }
  }
  counts.push_back(run);
  return nlohmann::json{{"size", {m.height(), m.width()}}, {"counts", counts}};
}

BinaryMask decode_rle(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("counts")) {
    throw MaskIoError("RLE object must contain 'size' and 'counts'");
  }
  const auto& size = j.at("size");
  if (!size.is_array() || size.size() != 2 || !size[0].is_number_integer() ||
      !size[1].is_number_integer()) {
    throw MaskIoError("RLE 'size' must be [height, width]");
  }
  const int height = size[0].get<int>();
  const int width = size[1].get<int>();
  if (height <= 0 || width <= 0) {
    throw MaskIoError("RLE dimensions must be positive");
  }
  const auto& counts = j.at("counts");
  if (!counts.is_array()) {
    throw MaskIoError("RLE 'counts' must be an array");
  }
  BinaryMask m(width, height);
  std::int64_t cursor = 0;
  const std::int64_t total = static_cast<std::int64_t>(width) * height;
  bool value = false;
  for (const auto& item : counts) {
    if (!item.is_number_integer() || item.get<std::int64_t>() < 0) {
      throw MaskIoError("RLE runs must be non-negative integers");
    }
    std::int64_t run = item.get<std::int64_t>();
    if (cursor + run > total) {
      throw MaskIoError("RLE runs exceed size");
    }
    if (value) {
      for (std::int64_t k = cursor; k < cursor + run; ++k) {
        m.set(static_cast<int>(k % height), static_cast<int>(k / height), true);
      }
    }
    cursor += run;
    value = !value;
  }
  if (cursor != total) {
    throw MaskIoError("RLE runs do not cover size (" + std::to_string(cursor) + " of " +
                      std::to_string(total) + " pixels)");
  }
  return m;
}

void save_mask(const BinaryMask& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  if (path.extension() == ".json") {
    out << encode_rle(m).dump();
  } else {
    const std::string bytes = encode_pbm(m);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw IoError("failed writing: " + path.string());
}

BinaryMask load_mask(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mask file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  if (path.extension() == ".json") {
    const auto j = nlohmann::json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw MaskIoError("invalid JSON in " + path.string());
    return decode_rle(j);
  }
  return decode_pbm(bytes);
}

}  // namespace georeason
