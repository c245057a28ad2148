#include "pullstream/video_model.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace pullstream;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text)
{
    const fs::path p = fs::temp_directory_path() / ("pullstream_video_" + name + ".csv");
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

void check_monotone(const VideoFile& f)
{
    for (std::int64_t t = 1; t <= f.num_chunks(); ++t)
        for (int m = 1; m <= f.num_levels(); ++m) {
            CHECK(f.bits_per_pixel(t, m) > 0.0);
            CHECK(f.quality(t, m) > 0.0);
            CHECK(f.quality(t, m) <= 1.0);
            if (m > 1) {
                CHECK(f.bits_per_pixel(t, m) >= f.bits_per_pixel(t, m - 1));
                CHECK(f.quality(t, m) >= f.quality(t, m - 1));
            }
        }
}

} // namespace

TEST_CASE("chunk size constant")
{
    VideoConstants c;
    CHECK(c.pixels_per_chunk() == 24.0 * 0.5 * 1280 * 720);
    VideoFile f(FileId{}, 1, 1, {0.1}, {0.9}, c);
    CHECK(f.chunk_bits(1, 1) == static_cast<Bits>(std::ceil(c.pixels_per_chunk() * 0.1)));
}

TEST_CASE("generated library is monotone and reproducible")
{
    VbrParams p;
    p.num_chunks = 100;
    REQUIRE(p.base_bits_per_pixel.size() == 4);
    const auto a = generate_vbr_library(p, 42);
    const auto b = generate_vbr_library(p, 42);
    REQUIRE(a.size() == 1);
    CHECK(a == b);
    CHECK(a[0].bits_table().size() == 400);
    check_monotone(a[0]);

    const QualityBounds qb = quality_bounds(a[0]);
    CHECK(qb.min <= qb.max);
    for (std::int64_t t = 1; t <= 100; ++t)
        for (int m = 1; m <= 4; ++m) {
            CHECK(a[0].quality(t, m) >= qb.min);
            CHECK(a[0].quality(t, m) <= qb.max);
        }
}

TEST_CASE("single level library")
{
    VbrParams p;
    p.num_chunks = 30;
    p.base_bits_per_pixel = {0.05};
    const auto lib = generate_vbr_library(p, 1);
    const VideoFile& f = lib[0];
    CHECK(f.num_levels() == 1);
    double lowest = 1.0;
    for (std::int64_t t = 1; t <= 30; ++t) {
        CHECK(chunk_profile(f, t).size() == 1);
        lowest = std::min(lowest, f.quality(t, 1));
    }
    CHECK(quality_bounds(f).min == lowest);
}

TEST_CASE("zero sigma gives a constant bitrate profile")
{
    VbrParams p;
    p.num_chunks = 20;
    p.sigma = 0.0;
    const auto f = generate_vbr_library(p, 9)[0];
    const auto first = chunk_profile(f, 1);
    for (std::int64_t t = 2; t <= 20; ++t) {
        const auto prof = chunk_profile(f, t);
        REQUIRE(prof.size() == first.size());
        for (std::size_t m = 0; m < prof.size(); ++m) {
            CHECK(prof[m].bits_per_pixel == first[m].bits_per_pixel);
            CHECK(prof[m].quality == first[m].quality);
        }
    }
}

TEST_CASE("chunk profile")
{
    const auto f = generate_vbr_library(VbrParams{}, 5)[0];
    const auto prof = chunk_profile(f, 1);
    CHECK(prof.size() == 4);
    for (std::size_t m = 1; m < prof.size(); ++m) {
        CHECK(prof[m].bits_per_pixel > prof[m - 1].bits_per_pixel);
        CHECK(prof[m].level == static_cast<int>(m) + 1);
    }
    CHECK_THROWS_AS(chunk_profile(f, 0), std::out_of_range);
    CHECK_THROWS_AS(chunk_profile(f, f.num_chunks() + 1), std::out_of_range);
}

TEST_CASE("generator rejects bad parameters")
{
    VbrParams p;
    p.base_bits_per_pixel = {0.1, 0.05};
    CHECK_THROWS_AS(generate_vbr_library(p, 1), ConfigError);
    p.base_bits_per_pixel = {0.1, 0.1};
    CHECK_THROWS_AS(generate_vbr_library(p, 1), ConfigError);
}

TEST_CASE("minimal trace import")
{
    const auto path = write_temp("minimal", "chunk,level,bits_per_pixel,quality\n"
                                            "1,1,0.05,0.8\n1,2,0.1,0.9\n2,1,0.06,0.82\n2,2,0.12,0.91\n");
    const VideoFile f = import_trace(path);
    CHECK(f.num_levels() == 2);
    CHECK(f.num_chunks() == 2);
    CHECK(f.bits_per_pixel(2, 2) == 0.12);
    CHECK(f.quality(2, 2) == 0.91);
}

TEST_CASE("trace row appears verbatim in the profile")
{
    std::string text = "chunk,level,bits_per_pixel,quality\n";
    for (int t = 1; t <= 3; ++t) {
        text += std::to_string(t) + ",1,0.05,0.8\n";
        text += std::to_string(t) + (t == 3 ? ",2,0.12,0.91\n" : ",2,0.1,0.9\n");
    }
    const VideoFile f = import_trace(write_temp("row", text));
    const auto prof = chunk_profile(f, 3);
    CHECK(prof[1].bits_per_pixel == 0.12);
    CHECK(prof[1].quality == 0.91);
}

TEST_CASE("trace rejections")
{
    const std::string header = "chunk,level,bits_per_pixel,quality\n";
    CHECK_THROWS_WITH_AS(import_trace(write_temp("nonmono", header + "1,1,0.1,0.8\n1,2,0.05,0.9\n")),
                         doctest::Contains("(t=1, m=2)"), TraceError);
    CHECK_THROWS_WITH_AS(import_trace(write_temp("missing", header + "1,1,0.1,0.8\n1,2,0.2,0.9\n2,1,0.1,0.8\n")),
                         doctest::Contains("(t=2, m=2)"), TraceError);
    CHECK_THROWS_AS(import_trace(write_temp("dup", header + "1,1,0.1,0.8\n1,1,0.1,0.8\n")), TraceError);
    CHECK_THROWS_AS(import_trace(write_temp("badnum", header + "1,1,abc,0.8\n")), TraceError);
    CHECK_THROWS_AS(import_trace(write_temp("badq", header + "1,1,0.1,1.5\n")), TraceError);
    CHECK_THROWS_AS(import_trace(write_temp("header", "t,m,b,d\n1,1,0.1,0.8\n")), TraceError);
    CHECK_THROWS_AS(import_trace(fs::temp_directory_path() / "pullstream_no_such_trace.csv"), TraceError);
}

TEST_CASE("export then import reproduces the tables")
{
    VbrParams p;
    p.num_chunks = 50;
    const auto f = generate_vbr_library(p, 77)[0];
    const fs::path path = fs::temp_directory_path() / "pullstream_video_roundtrip.csv";
    export_trace(f, path);
    const VideoFile g = import_trace(path, f.id(), f.constants());
    CHECK(g == f);
}
