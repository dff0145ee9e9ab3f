#include <array>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "fintrace/error.hpp"
#include "fintrace/image.hpp"

namespace fintrace {

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode)
{
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f)
        throw IoError("cannot open " + path.string());
    return f;
}

enum class Format { png, jpeg, unknown };

Format sniff(std::FILE* f)
{
    std::array<unsigned char, 8> magic{};
    const std::size_t n = std::fread(magic.data(), 1, magic.size(), f);
    std::rewind(f);
    if (n >= 8 && png_sig_cmp(magic.data(), 0, 8) == 0)
        return Format::png;
    if (n >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF)
        return Format::jpeg;
    return Format::unknown;
}

RgbImage decode_png(std::FILE* f, const std::string& name)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_stdio(&png, f))
        throw IoError(name + ": " + png.message);
    png.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, rgba.data(), 0, nullptr)) {
        png_image_free(&png);
        throw IoError(name + ": " + png.message);
    }
    const int w = int(png.width);
    const int h = int(png.height);
    std::vector<Rgb> px(std::size_t(w) * h);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = {rgba[4 * i], rgba[4 * i + 1], rgba[4 * i + 2]};
    return RgbImage(w, h, std::move(px));
}

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo)
{
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RgbImage decode_jpeg(std::FILE* f, const std::string& name)
{
    jpeg_decompress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    // Everything that owns memory lives outside the setjmp scope.
    std::vector<std::uint8_t> buffer;
    int w = 0, h = 0;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(name + ": " + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    w = int(cinfo.output_width);
    h = int(cinfo.output_height);
    buffer.resize(std::size_t(w) * h * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = buffer.data() + std::size_t(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    std::vector<Rgb> px(std::size_t(w) * h);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
    return RgbImage(w, h, std::move(px));
}

void write_png(const std::filesystem::path& path, int w, int h, png_uint_32 format,
               const void* data)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = png_uint_32(w);
    png.height = png_uint_32(h);
    png.format = format;
    if (!png_image_write_to_file(&png, path.c_str(), 0, data, 0, nullptr))
        throw IoError(path.string() + ": " + png.message);
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path)
{
    auto f = open_file(path, "rb");
    RgbImage img;
    switch (sniff(f.get())) {
    case Format::png:
        img = decode_png(f.get(), path.string());
        break;
    case Format::jpeg:
        img = decode_jpeg(f.get(), path.string());
        break;
    case Format::unknown:
        throw IoError(path.string() + ": unsupported format (PNG or JPEG expected)");
    }
    if (img.empty())
        throw IoError(path.string() + ": zero-size image");
    if (img.width() < kMinImageDim || img.height() < kMinImageDim)
        throw InvalidArgument(path.string() + ": image is " + std::to_string(img.width()) + "x" +
                              std::to_string(img.height()) + ", minimum is 3x3");
    return img;
}

void save_png(const RgbImage& img, const std::filesystem::path& path)
{
    write_png(path, img.width(), img.height(), PNG_FORMAT_RGB, img.pixels().data());
}

void save_png(const GrayImage& img, const std::filesystem::path& path)
{
    write_png(path, img.width(), img.height(), PNG_FORMAT_GRAY, img.pixels().data());
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              std::streamsize(img.pixels().size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

}  // namespace fintrace
