#include "clumpsplit/imageio.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>

namespace clumpsplit {

RasterImage load_image(const std::string& path) {
    cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (m.empty()) throw io_error("cannot read image: " + path);
    if (m.channels() != 1 && m.channels() != 3)
        throw format_error("unsupported channel count " + std::to_string(m.channels()) + ": " + path);

    double scale;
    switch (m.depth()) {
        case CV_8U: scale = 1.0 / 255.0; break;
        case CV_16U: scale = 1.0 / 65535.0; break;
        default: throw format_error("unsupported bit depth (want 8 or 16 bit): " + path);
    }

    RasterImage img = RasterImage::zeros(m.cols, m.rows, m.channels());
    for (int y = 0; y < m.rows; ++y) {
        for (int x = 0; x < m.cols; ++x) {
            if (m.channels() == 1) {
                double v = m.depth() == CV_8U ? m.at<std::uint8_t>(y, x) : m.at<std::uint16_t>(y, x);
                img.at(x, y) = static_cast<float>(v * scale);
            } else {
                // OpenCV decodes as BGR; store in the file's RGB order
                if (m.depth() == CV_8U) {
                    auto px = m.at<cv::Vec3b>(y, x);
                    img.at(x, y, 0) = static_cast<float>(px[2] * scale);
                    img.at(x, y, 1) = static_cast<float>(px[1] * scale);
                    img.at(x, y, 2) = static_cast<float>(px[0] * scale);
                } else {
                    auto px = m.at<cv::Vec3w>(y, x);
                    img.at(x, y, 0) = static_cast<float>(px[2] * scale);
                    img.at(x, y, 1) = static_cast<float>(px[1] * scale);
                    img.at(x, y, 2) = static_cast<float>(px[0] * scale);
                }
            }
        }
    }
    return img;
}

void save_mask_png(const BinaryMask& mask, const std::string& path) {
    cv::Mat m(mask.height, mask.width, CV_8U);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) m.at<std::uint8_t>(y, x) = mask.at(x, y) ? 255 : 0;
    if (!cv::imwrite(path, m)) throw io_error("cannot write mask: " + path);
}

BinaryMask load_mask_png(const std::string& path) {
    cv::Mat m = cv::imread(path, cv::IMREAD_GRAYSCALE);
    if (m.empty()) throw io_error("cannot read mask: " + path);
    BinaryMask mask = BinaryMask::zeros(m.cols, m.rows);
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) mask.set(x, y, m.at<std::uint8_t>(y, x) >= 128);
    return mask;
}

void save_labels_png(const LabelMask& labels, const std::string& path) {
    cv::Mat m(labels.height, labels.width, CV_16U);
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x)
            m.at<std::uint16_t>(y, x) = static_cast<std::uint16_t>(std::clamp<std::int32_t>(labels.at(x, y), 0, 65535));
    if (!cv::imwrite(path, m)) throw io_error("cannot write labels: " + path);
}

LabelMask load_labels_png(const std::string& path) {
    cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (m.empty()) throw io_error("cannot read labels: " + path);
    if (m.channels() != 1) throw format_error("label mask must be single-channel: " + path);
    LabelMask out = LabelMask::zeros(m.cols, m.rows);
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) {
            std::int32_t v = m.depth() == CV_16U ? m.at<std::uint16_t>(y, x) : m.at<std::uint8_t>(y, x);
            out.at(x, y) = v;
        }
    out.densify();
    return out;
}

void save_rgb_png(const RasterImage& img, const std::string& path) {
    if (img.channels != 3) throw format_error("save_rgb_png expects 3 channels");
    cv::Mat m(img.height, img.width, CV_8UC3);
    auto to8 = [](float v) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
    };
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            m.at<cv::Vec3b>(y, x) = {to8(img.at(x, y, 2)), to8(img.at(x, y, 1)), to8(img.at(x, y, 0))};
    if (!cv::imwrite(path, m)) throw io_error("cannot write image: " + path);
}

}  // namespace clumpsplit
