#pragma once

#include <filesystem>

#include "molmem/dataset.hpp"
#include "molmem/image.hpp"

namespace molmem {

// P5, maxval 255; binary images map black=0, white=255
void write_pgm(const std::filesystem::path& path, const BinaryImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

// Reads P2 or P5 (with comment lines).
GrayImage read_pgm(const std::filesystem::path& path);
BinaryImage read_pgm_binary(const std::filesystem::path& path, int threshold = 128);

} // namespace molmem
