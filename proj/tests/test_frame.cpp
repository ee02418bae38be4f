#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "testutil.hpp"
#include "vcbench/errors.hpp"
#include "vcbench/frame.hpp"
#include "vcbench/y4m.hpp"

using namespace vcbench;

TEST_CASE("preprocess: full-frame crop at source size is the identity") {
  std::mt19937_64 rng(1);
  const Frame src = testutil::random_frame(64, 48, rng);
  const Frame out =
      preprocess(src, {{0, 0, src.width, src.height}, src.width, src.height});
  CHECK(out.luma == src.luma);
}

TEST_CASE("preprocess: center quadrant upscales to the source size") {
  Frame src;
  src.width = 640;
  src.height = 480;
  src.luma.assign(640 * 480, 0);
  // brighten exactly the center quadrant
  for (int y = 120; y < 360; ++y)
    for (int x = 160; x < 480; ++x)
      src.luma[static_cast<std::size_t>(y) * 640 + x] = 200;

  const Frame out = preprocess(src, {{160, 120, 320, 240}, 640, 480});
  CHECK(out.width == 640);
  CHECK(out.height == 480);
  // away from the border everything comes from the bright region
  CHECK(out.at(320, 240) == 200);
  CHECK(out.at(10, 10) == 200);
}

TEST_CASE("preprocess: constants pass through any crop/resize") {
  Frame src;
  src.width = 100;
  src.height = 80;
  src.luma.assign(100 * 80, 77);
  const Frame out = preprocess(src, {{13, 7, 61, 53}, 320, 240});
  for (const auto v : out.luma) CHECK(v == 77);
}

TEST_CASE("preprocess: crop outside the source throws") {
  std::mt19937_64 rng(2);
  const Frame src = testutil::random_frame(32, 32, rng);
  CHECK_THROWS_AS(preprocess(src, {{20, 20, 20, 20}, 32, 32}), CropOutOfBounds);
  CHECK_THROWS_AS(preprocess(src, {{-1, 0, 8, 8}, 32, 32}), CropOutOfBounds);
  CHECK_THROWS_AS(preprocess(src, {{0, 0, 0, 8}, 32, 32}), CropOutOfBounds);
}

TEST_CASE("detect_padding: uniform border is found exactly") {
  FrameSequence seq;
  seq.frame_rate = 30.0;
  std::mt19937_64 rng(3);
  for (int f = 0; f < 5; ++f) {
    Frame frame;
    frame.width = 64;
    frame.height = 48;
    frame.luma.assign(64 * 48, 16);  // padding level
    for (int y = 8; y < 40; ++y)
      for (int x = 12; x < 52; ++x)
        frame.luma[static_cast<std::size_t>(y) * 64 + x] =
            static_cast<std::uint8_t>(40 + rng() % 200);
    seq.frames.push_back(frame);
  }
  const CropRect content = detect_padding(seq);
  CHECK(content.x == 12);
  CHECK(content.y == 8);
  CHECK(content.w == 40);
  CHECK(content.h == 32);
}

TEST_CASE("detect_padding: blank feed falls back to the full frame") {
  FrameSequence seq;
  Frame frame;
  frame.width = 32;
  frame.height = 32;
  frame.luma.assign(32 * 32, 0);
  seq.frames.push_back(frame);
  const CropRect content = detect_padding(seq);
  CHECK(content.w == 32);
  CHECK(content.h == 32);
}

TEST_CASE("rgb_to_luma: BT.601 anchors") {
  CHECK(rgb_to_luma(0, 0, 0) == 0);
  CHECK(rgb_to_luma(255, 255, 255) == 255);
  CHECK(rgb_to_luma(255, 0, 0) == 76);    // 0.299 * 255
  CHECK(rgb_to_luma(0, 255, 0) == 150);   // 0.587 * 255
  CHECK(rgb_to_luma(0, 0, 255) == 29);    // 0.114 * 255
}

TEST_CASE("y4m: write/read round trip preserves luma and geometry") {
  const auto dir = testutil::temp_dir("y4m");
  std::mt19937_64 rng(4);
  FrameSequence seq;
  seq.frame_rate = 30.0;
  for (int i = 0; i < 4; ++i) seq.frames.push_back(testutil::random_frame(32, 24, rng));

  const auto path = dir / "clip.y4m";
  write_y4m(path, seq);
  const FrameSequence reread = read_y4m(path);
  REQUIRE(reread.frames.size() == 4);
  CHECK(reread.width() == 32);
  CHECK(reread.height() == 24);
  CHECK(reread.frame_rate == doctest::Approx(30.0));
  for (int i = 0; i < 4; ++i)
    CHECK(reread.frames[static_cast<std::size_t>(i)].luma ==
          seq.frames[static_cast<std::size_t>(i)].luma);
  std::filesystem::remove_all(dir);
}

TEST_CASE("y4m: malformed inputs are rejected") {
  const auto dir = testutil::temp_dir("y4m_bad");
  {
    std::ofstream out(dir / "nota.y4m");
    out << "MPEG4HEADER nonsense\n";
  }
  CHECK_THROWS_AS(read_y4m(dir / "nota.y4m"), InputError);
  {
    std::ofstream out(dir / "truncated.y4m", std::ios::binary);
    out << "YUV4MPEG2 W32 H24 F30:1 C420\nFRAME\n";
    out << std::string(100, 'x');  // far less than one plane
  }
  CHECK_THROWS_AS(read_y4m(dir / "truncated.y4m"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("raw Y input: explicit dims and sidecar dims") {
  const auto dir = testutil::temp_dir("rawy");
  std::mt19937_64 rng(5);
  const Frame a = testutil::random_frame(16, 12, rng);
  const Frame b = testutil::random_frame(16, 12, rng);
  {
    std::ofstream out(dir / "clip.yraw", std::ios::binary);
    out.write(reinterpret_cast<const char*>(a.luma.data()),
              static_cast<std::streamsize>(a.luma.size()));
    out.write(reinterpret_cast<const char*>(b.luma.data()),
              static_cast<std::streamsize>(b.luma.size()));
  }

  const FrameSequence explicit_dims = read_raw_y(dir / "clip.yraw", 16, 12, 25.0);
  REQUIRE(explicit_dims.frames.size() == 2);
  CHECK(explicit_dims.frames[0].luma == a.luma);
  CHECK(explicit_dims.frame_rate == doctest::Approx(25.0));

  {
    std::ofstream out(dir / "clip.yraw.dims.json");
    out << R"({"width": 16, "height": 12, "frame_rate": 24.0})";
  }
  const FrameSequence sidecar = read_raw_y(dir / "clip.yraw");
  REQUIRE(sidecar.frames.size() == 2);
  CHECK(sidecar.frame_rate == doctest::Approx(24.0));

  CHECK_THROWS_AS(read_raw_y(dir / "missing.yraw", 16, 12), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("read_y4m: corrupted files fail cleanly") {
  const auto dir = testutil::temp_dir("y4m_fuzz");
  std::mt19937_64 rng(1618);
  FrameSequence seq;
  seq.frame_rate = 30.0;
  for (int i = 0; i < 3; ++i) seq.frames.push_back(testutil::random_frame(16, 16, rng));
  write_y4m(dir / "base.y4m", seq);
  std::ifstream in(dir / "base.y4m", std::ios::binary);
  std::vector<char> base((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  for (int round = 0; round < 200; ++round) {
    auto mutated = base;
    if (round % 2 == 0) {
      for (int k = 0; k < 5; ++k)
        mutated[rng() % mutated.size()] = static_cast<char>(rng());
    } else {
      mutated.resize(rng() % mutated.size());
    }
    const auto path = dir / "mut.y4m";
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out.write(mutated.data(), static_cast<std::streamsize>(mutated.size()));
    }
    try {
      const FrameSequence got = read_y4m(path);
      for (const auto& f : got.frames)
        CHECK(f.luma.size() ==
              static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height));
    } catch (const InputError&) {
      // the one defined failure mode
    }
  }
  std::filesystem::remove_all(dir);
}
