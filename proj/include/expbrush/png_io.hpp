#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace expbrush {

// Writes an 8-bit RGB PNG atomically (temp file + rename).  `text` pairs go
// into tEXt chunks.  Output bytes are a deterministic function of the input.
void write_png_rgb8(const std::string& path, int width, int height,
                    const std::vector<std::uint8_t>& rgb,
                    const std::vector<std::pair<std::string, std::string>>& text = {});

// Atomic text-file write used by every CLI artifact.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace expbrush
