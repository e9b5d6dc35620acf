#pragma once

#include <stdexcept>
#include <string>

#include "clumpsplit/image.hpp"

namespace clumpsplit {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Load an 8- or 16-bit PNG/TIFF image, grayscale or RGB, rescaled to [0,1].
/// RGB channel order is preserved as stored in the file.
RasterImage load_image(const std::string& path);

/// Binary mask as 8-bit grayscale PNG with values {0,255}.
void save_mask_png(const BinaryMask& mask, const std::string& path);
BinaryMask load_mask_png(const std::string& path);

/// Label mask as 16-bit grayscale PNG (label ids as pixel values).
void save_labels_png(const LabelMask& labels, const std::string& path);
LabelMask load_labels_png(const std::string& path);

/// 3-channel [0,1] image as 8-bit RGB PNG.
void save_rgb_png(const RasterImage& img, const std::string& path);

}  // namespace clumpsplit
