#pragma once

#include "pullstream/types.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace pullstream {

struct VideoConstants {
    double frame_rate = 24.0;               // frames per second
    double gop_seconds = 0.5;               // playback duration of one chunk
    std::int64_t pixels_per_frame = 1280 * 720;

    /// Pixels per chunk, frame_rate * gop_seconds * pixels_per_frame.
    double pixels_per_chunk() const
    {
        return frame_rate * gop_seconds * static_cast<double>(pixels_per_frame);
    }

    bool operator==(const VideoConstants&) const = default;
};

/// One quality level of one chunk.
struct LevelProfile {
    int level = 1;               // 1-based
    double bits_per_pixel = 0.0;
    double quality = 0.0;        // SSIM-like, in (0, 1]
};

struct QualityBounds {
    double min = 0.0; // smallest lowest-level quality over all chunks
    double max = 1.0; // largest highest-level quality over all chunks
};

/// Per-chunk, per-level size and quality tables of one video.
///
/// Both tables are nondecreasing in the level for every chunk; this is checked
/// on construction together with B > 0 and 0 < D <= 1.
class VideoFile {
public:
    VideoFile(FileId id, int num_levels, std::int64_t num_chunks,
              std::vector<double> bits_per_pixel, std::vector<double> quality,
              VideoConstants constants = {});

    FileId id() const { return id_; }
    int num_levels() const { return levels_; }
    std::int64_t num_chunks() const { return chunks_; }
    const VideoConstants& constants() const { return constants_; }
    double pixels_per_chunk() const { return constants_.pixels_per_chunk(); }

    /// Table accessors, chunk and level both 1-based.
    double bits_per_pixel(std::int64_t chunk, int level) const;
    double quality(std::int64_t chunk, int level) const;

    /// Size of the chunk at a level in whole bits (ceil of k * B).
    Bits chunk_bits(std::int64_t chunk, int level) const;

    const std::vector<double>& bits_table() const { return bits_; }
    const std::vector<double>& quality_table() const { return quality_; }

    bool operator==(const VideoFile&) const = default;

private:
    std::size_t offset(std::int64_t chunk, int level) const;

    FileId id_;
    int levels_;
    std::int64_t chunks_;
    std::vector<double> bits_;    // row-major [chunk][level]
    std::vector<double> quality_;
    VideoConstants constants_;
};

/// All levels of chunk t (1-based), ascending level. Throws std::out_of_range.
std::vector<LevelProfile> chunk_profile(const VideoFile& file, std::int64_t chunk);

QualityBounds quality_bounds(const VideoFile& file);

struct VbrParams {
    std::size_t num_files = 1;
    std::int64_t num_chunks = 600;
    std::vector<double> base_bits_per_pixel{0.0125, 0.025, 0.05, 0.1}; // strictly increasing
    double sigma = 0.35;              // log-std of the per-chunk size fluctuation
    // Quality curve D = 1 - scale * B^(-exponent), concave and increasing in log B.
    double quality_scale = 0.0086;
    double quality_exponent = 0.8;
    VideoConstants constants;
};

/// Synthetic VBR library. The same lognormal fluctuation multiplies every level
/// of a chunk, so level monotonicity holds by construction.
std::vector<VideoFile> generate_vbr_library(const VbrParams& params, std::uint64_t seed);

/// Reads a trace CSV with header `chunk,level,bits_per_pixel,quality` covering
/// a complete chunk x level grid. Throws TraceError naming the offending cell.
VideoFile import_trace(const std::filesystem::path& path, FileId id = FileId{},
                       VideoConstants constants = {});

/// Writes a file in the import_trace format with round-trip exact numbers.
void export_trace(const VideoFile& file, const std::filesystem::path& path);

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pullstream
