#include "pullstream/video_model.hpp"

#include "pullstream/detail/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace pullstream {

namespace {

std::string cell(std::int64_t chunk, int level)
{
    return "(t=" + std::to_string(chunk) + ", m=" + std::to_string(level) + ")";
}

} // namespace

VideoFile::VideoFile(FileId id, int num_levels, std::int64_t num_chunks,
                     std::vector<double> bits_table, std::vector<double> quality_table,
                     VideoConstants constants)
    : id_(id), levels_(num_levels), chunks_(num_chunks), bits_(std::move(bits_table)),
      quality_(std::move(quality_table)), constants_(constants)
{
    if (levels_ < 1)
        throw ConfigError("video: number of quality levels must be >= 1");
    if (chunks_ < 1)
        throw ConfigError("video: number of chunks must be >= 1");
    const auto cells = static_cast<std::size_t>(levels_) * static_cast<std::size_t>(chunks_);
    if (bits_.size() != cells || quality_.size() != cells)
        throw ConfigError("video: table size does not match levels x chunks");
    if (!(constants_.frame_rate > 0.0) || !(constants_.gop_seconds > 0.0) || constants_.pixels_per_frame < 1)
        throw ConfigError("video: frame_rate, gop_s and pixels_per_frame must be positive");

    for (std::int64_t t = 1; t <= chunks_; ++t) {
        for (int m = 1; m <= levels_; ++m) {
            const double b = bits_per_pixel(t, m);
            const double d = quality(t, m);
            if (!(b > 0.0) || !std::isfinite(b))
                throw TraceError("bits per pixel must be positive at " + cell(t, m));
            if (!(d > 0.0 && d <= 1.0))
                throw TraceError("quality must lie in (0,1] at " + cell(t, m));
            if (m > 1 && (b < bits_per_pixel(t, m - 1) || d < quality(t, m - 1)))
                throw TraceError("quality levels are not monotone at " + cell(t, m));
        }
    }
}

std::size_t VideoFile::offset(std::int64_t chunk, int level) const
{
    if (chunk < 1 || chunk > chunks_)
        throw std::out_of_range("chunk index " + std::to_string(chunk) + " outside [1, " +
                                std::to_string(chunks_) + "]");
    if (level < 1 || level > levels_)
        throw std::out_of_range("quality level " + std::to_string(level) + " outside [1, " +
                                std::to_string(levels_) + "]");
    return static_cast<std::size_t>(chunk - 1) * static_cast<std::size_t>(levels_) +
           static_cast<std::size_t>(level - 1);
}

double VideoFile::bits_per_pixel(std::int64_t chunk, int level) const { return bits_[offset(chunk, level)]; }

double VideoFile::quality(std::int64_t chunk, int level) const { return quality_[offset(chunk, level)]; }

Bits VideoFile::chunk_bits(std::int64_t chunk, int level) const
{
    return static_cast<Bits>(std::ceil(pixels_per_chunk() * bits_per_pixel(chunk, level)));
}

std::vector<LevelProfile> chunk_profile(const VideoFile& file, std::int64_t chunk)
{
    std::vector<LevelProfile> profile;
    profile.reserve(static_cast<std::size_t>(file.num_levels()));
    for (int m = 1; m <= file.num_levels(); ++m)
        profile.push_back({m, file.bits_per_pixel(chunk, m), file.quality(chunk, m)});
    return profile;
}

QualityBounds quality_bounds(const VideoFile& file)
{
    QualityBounds b{1.0, 0.0};
    for (std::int64_t t = 1; t <= file.num_chunks(); ++t) {
        b.min = std::min(b.min, file.quality(t, 1));
        b.max = std::max(b.max, file.quality(t, file.num_levels()));
    }
    return b;
}

std::vector<VideoFile> generate_vbr_library(const VbrParams& params, std::uint64_t seed)
{
    if (params.num_files < 1)
        throw ConfigError("video.files: must be >= 1");
    if (params.num_chunks < 1)
        throw ConfigError("video.chunks: must be >= 1");
    if (params.base_bits_per_pixel.empty())
        throw ConfigError("video.base_bits_per_pixel: at least one level is required");
    for (std::size_t m = 0; m < params.base_bits_per_pixel.size(); ++m) {
        if (!(params.base_bits_per_pixel[m] > 0.0))
            throw ConfigError("video.base_bits_per_pixel: entries must be positive");
        if (m > 0 && !(params.base_bits_per_pixel[m] > params.base_bits_per_pixel[m - 1]))
            throw ConfigError("video.base_bits_per_pixel: entries must be strictly increasing");
    }
    if (!(params.sigma >= 0.0))
        throw ConfigError("video.sigma: must be >= 0");
    if (!(params.quality_scale > 0.0) || !(params.quality_exponent > 0.0))
        throw ConfigError("video.quality_scale and video.quality_exponent must be positive");

    const int levels = static_cast<int>(params.base_bits_per_pixel.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<VideoFile> library;
    for (std::size_t f = 0; f < params.num_files; ++f) {
        const auto cells = static_cast<std::size_t>(levels) * static_cast<std::size_t>(params.num_chunks);
        std::vector<double> bits;
        std::vector<double> quality;
        bits.reserve(cells);
        quality.reserve(cells);
        for (std::int64_t t = 1; t <= params.num_chunks; ++t) {
            // Draw even when sigma is 0 so the stream position does not depend on it.
            const double z = normal(rng);
            const double fluctuation = std::exp(params.sigma * z);
            for (int m = 0; m < levels; ++m) {
                const double b = params.base_bits_per_pixel[static_cast<std::size_t>(m)] * fluctuation;
                const double d = 1.0 - params.quality_scale * std::pow(b, -params.quality_exponent);
                bits.push_back(b);
                quality.push_back(std::clamp(d, 1e-6, 1.0));
            }
        }
        library.emplace_back(file_id(f), levels, params.num_chunks, std::move(bits), std::move(quality),
                             params.constants);
    }
    return library;
}

VideoFile import_trace(const std::filesystem::path& path, FileId id, VideoConstants constants)
{
    std::ifstream in(path);
    if (!in)
        throw TraceError("cannot open trace file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line))
        throw TraceError(path.string() + ": missing header row");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "chunk,level,bits_per_pixel,quality")
        throw TraceError(path.string() + ": expected header 'chunk,level,bits_per_pixel,quality'");

    std::map<std::pair<std::int64_t, int>, std::pair<double, double>> cells;
    std::int64_t max_chunk = 0;
    int max_level = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(f);
        if (fields.size() != 4)
            throw TraceError(path.string() + ":" + std::to_string(line_no) + ": expected 4 columns");
        std::int64_t t = 0;
        std::int64_t m = 0;
        double b = 0.0;
        double d = 0.0;
        if (!detail::parse_number(fields[0], t) || !detail::parse_number(fields[1], m) ||
            !detail::parse_number(fields[2], b) || !detail::parse_number(fields[3], d))
            throw TraceError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
        if (t < 1 || m < 1 || m > 1000)
            throw TraceError(path.string() + ":" + std::to_string(line_no) + ": chunk and level must be >= 1");
        if (!cells.emplace(std::pair{t, static_cast<int>(m)}, std::pair{b, d}).second)
            throw TraceError(path.string() + ": duplicate cell " + cell(t, static_cast<int>(m)));
        max_chunk = std::max(max_chunk, t);
        max_level = std::max(max_level, static_cast<int>(m));
    }
    if (cells.empty())
        throw TraceError(path.string() + ": no data rows");

    std::vector<double> bits;
    std::vector<double> quality;
    for (std::int64_t t = 1; t <= max_chunk; ++t) {
        for (int m = 1; m <= max_level; ++m) {
            const auto it = cells.find({t, m});
            if (it == cells.end())
                throw TraceError(path.string() + ": missing grid cell " + cell(t, m));
            bits.push_back(it->second.first);
            quality.push_back(it->second.second);
        }
    }
    try {
        return VideoFile(id, max_level, max_chunk, std::move(bits), std::move(quality), constants);
    } catch (const TraceError& e) {
        throw TraceError(path.string() + ": " + e.what());
    }
}

void export_trace(const VideoFile& file, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write trace file '" + path.string() + "'");
    out << "chunk,level,bits_per_pixel,quality\n";
    for (std::int64_t t = 1; t <= file.num_chunks(); ++t)
        for (int m = 1; m <= file.num_levels(); ++m)
            out << t << ',' << m << ',' << detail::format_double(file.bits_per_pixel(t, m)) << ','
                << detail::format_double(file.quality(t, m)) << '\n';
    if (!out)
        throw std::runtime_error("write failed for trace file '" + path.string() + "'");
}

} // namespace pullstream
