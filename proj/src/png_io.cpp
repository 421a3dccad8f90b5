#include "expbrush/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "expbrush/errors.hpp"

namespace expbrush {

namespace {

std::string temp_name(const std::string& path) { return path + ".tmp"; }

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = temp_name(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("rename " + tmp + " -> " + path + ": " + ec.message());
}

void write_png_rgb8(const std::string& path, int width, int height,
                    const std::vector<std::uint8_t>& rgb,
                    const std::vector<std::pair<std::string, std::string>>& text) {
    if (width < 1 || height < 1 ||
        rgb.size() != static_cast<std::size_t>(width) * height * 3)
        throw DomainError("write_png_rgb8: buffer does not match dimensions");

    const std::string tmp = temp_name(path);
    std::FILE* fp = std::fopen(tmp.c_str(), "wb");
    if (!fp) throw Error("cannot open " + tmp + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                              nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw Error("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw Error("libpng write failed for " + tmp);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);

    std::vector<png_text> chunks(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        chunks[i] = png_text{};
        chunks[i].compression = PNG_TEXT_COMPRESSION_NONE;
        chunks[i].key = const_cast<char*>(text[i].first.c_str());
        chunks[i].text = const_cast<char*>(text[i].second.c_str());
        chunks[i].text_length = text[i].second.size();
    }
    if (!chunks.empty())
        png_set_text(png, info, chunks.data(), static_cast<int>(chunks.size()));

    png_write_info(png, info);
    for (int r = 0; r < height; ++r) {
        png_write_row(png, const_cast<png_bytep>(
                               &rgb[static_cast<std::size_t>(r) * width * 3]));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);

    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("rename " + tmp + " -> " + path + ": " + ec.message());
}

}  // namespace expbrush
