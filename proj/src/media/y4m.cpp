#include "vcbench/y4m.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "vcbench/errors.hpp"

namespace vcbench {
namespace {

constexpr int kMaxDim = 16384;

void read_plane(std::istream& in, std::vector<std::uint8_t>& plane,
                std::size_t n, const char* what) {
  plane.resize(n);
  in.read(reinterpret_cast<char*>(plane.data()),
          static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw InputError(std::string("truncated ") + what + " plane");
}

}  // namespace

FrameSequence read_y4m(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());

  std::string header;
  if (!std::getline(in, header) || header.rfind("YUV4MPEG2", 0) != 0)
    throw InputError(path.string() + ": not a YUV4MPEG2 stream");

  int w = 0, h = 0;
  double fps = 30.0;
  bool mono = false;
  std::istringstream tokens(header.substr(9));
  std::string tok;
  try {
    while (tokens >> tok) {
      switch (tok[0]) {
        case 'W': w = std::stoi(tok.substr(1)); break;
        case 'H': h = std::stoi(tok.substr(1)); break;
        case 'F': {
          const auto colon = tok.find(':');
          const double num = std::stod(tok.substr(1, colon - 1));
          const double den = std::stod(tok.substr(colon + 1));
          if (den > 0) fps = num / den;
          break;
        }
        case 'C':
          if (tok.substr(1, 4) == "mono") {
            mono = true;
          } else if (tok.substr(1, 3) != "420") {
            throw InputError(path.string() + ": unsupported chroma mode " + tok);
          }
          break;
        default: break;  // interlacing/aspect tags ignored
      }
    }
  } catch (const std::invalid_argument&) {
    throw InputError(path.string() + ": malformed stream header");
  } catch (const std::out_of_range&) {
    throw InputError(path.string() + ": malformed stream header");
  }
  if (w <= 0 || h <= 0 || w > kMaxDim || h > kMaxDim || !(fps > 0.0))
    throw InputError(path.string() + ": implausible stream geometry");

  FrameSequence seq;
  seq.frame_rate = fps;
  const std::size_t y_size = static_cast<std::size_t>(w) * h;
  const std::size_t c_size = static_cast<std::size_t>(w / 2) * (h / 2);

  std::string frame_line;
  while (std::getline(in, frame_line)) {
    if (frame_line.rfind("FRAME", 0) != 0)
      throw InputError(path.string() + ": malformed FRAME marker");
    Frame f;
    f.width = w;
    f.height = h;
    read_plane(in, f.luma, y_size, "luma");
    if (!mono) {
      read_plane(in, f.cb, c_size, "Cb");
      read_plane(in, f.cr, c_size, "Cr");
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

void write_y4m(const std::filesystem::path& path, const FrameSequence& seq) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());

  const int w = seq.width();
  const int h = seq.height();
  // keep F as a ratio; common integer rates encode exactly
  const auto num = static_cast<long>(std::lround(seq.frame_rate * 1001));
  out << "YUV4MPEG2 W" << w << " H" << h << " F" << num << ":1001"
      << " Ip A1:1 C420jpeg\n";

  const std::size_t c_size = static_cast<std::size_t>(w / 2) * (h / 2);
  const std::vector<std::uint8_t> neutral(c_size, 128);
  for (const Frame& f : seq.frames) {
    out << "FRAME\n";
    out.write(reinterpret_cast<const char*>(f.luma.data()),
              static_cast<std::streamsize>(f.luma.size()));
    const auto& cb = f.cb.size() == c_size ? f.cb : neutral;
    const auto& cr = f.cr.size() == c_size ? f.cr : neutral;
    out.write(reinterpret_cast<const char*>(cb.data()),
              static_cast<std::streamsize>(cb.size()));
    out.write(reinterpret_cast<const char*>(cr.data()),
              static_cast<std::streamsize>(cr.size()));
  }
}

FrameSequence read_raw_y(const std::filesystem::path& path, int width,
                         int height, double frame_rate) {
  if (width <= 0 || height <= 0) {
    const auto sidecar = path.string() + ".dims.json";
    std::ifstream meta(sidecar);
    if (!meta)
      throw InputError("raw video needs dimensions: missing " + sidecar);
    nlohmann::json j;
    meta >> j;
    width = j.at("width").get<int>();
    height = j.at("height").get<int>();
    frame_rate = j.value("frame_rate", frame_rate);
  }
  if (width <= 0 || height <= 0 || width > kMaxDim || height > kMaxDim)
    throw InputError("invalid raw video dims");

  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());

  FrameSequence seq;
  seq.frame_rate = frame_rate;
  const std::size_t y_size = static_cast<std::size_t>(width) * height;
  while (true) {
    Frame f;
    f.width = width;
    f.height = height;
    f.luma.resize(y_size);
    in.read(reinterpret_cast<char*>(f.luma.data()),
            static_cast<std::streamsize>(y_size));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 0) break;
    if (got != y_size)
      throw InputError(path.string() + ": trailing partial frame");
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

}  // namespace vcbench
