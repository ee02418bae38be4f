#include "vcbench/video_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vcbench/errors.hpp"
#include "vcbench/kernels.hpp"

namespace vcbench {

std::string to_string(VideoMetric m) {
  switch (m) {
    case VideoMetric::psnr: return "psnr";
    case VideoMetric::ssim: return "ssim";
    case VideoMetric::ms_ssim: return "msssim";
    case VideoMetric::vifp: return "vifp";
  }
  return "psnr";
}

VideoMetric video_metric_from_string(const std::string& name) {
  if (name == "psnr") return VideoMetric::psnr;
  if (name == "ssim") return VideoMetric::ssim;
  if (name == "msssim" || name == "ms-ssim") return VideoMetric::ms_ssim;
  if (name == "vifp") return VideoMetric::vifp;
  throw InputError("unknown metric: " + name);
}

namespace {

constexpr double kC1 = 6.5025;    // (0.01*255)^2
constexpr double kC2 = 58.5225;   // (0.03*255)^2
constexpr double kPsnrCap = 100.0;

void check_dims(const Frame& a, const Frame& b) {
  if (a.width != b.width || a.height != b.height)
    throw DimensionMismatch("frame dimensions differ");
}

std::vector<double> to_plane(const Frame& f) {
  std::vector<double> p(f.luma.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = f.luma[i];
  return p;
}

std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> taps(static_cast<std::size_t>(size));
  const double c = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    taps[static_cast<std::size_t>(i)] =
        std::exp(-0.5 * ((i - c) / sigma) * ((i - c) / sigma));
    sum += taps[static_cast<std::size_t>(i)];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

double mean_of(const std::vector<double>& v) {
  return kernels::sum_f64(v) / static_cast<double>(v.size());
}

struct LocalStats {
  int w = 0, h = 0;
  std::vector<double> mu1, mu2, var1, var2, cov;
};

// Windowed means/variances/covariance over the valid region.
LocalStats local_stats(const std::vector<double>& x,
                       const std::vector<double>& y, int w, int h,
                       std::span<const double> taps) {
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<double> xx(n), yy(n), xy(n);
  kernels::mul_f64(x, x, xx);
  kernels::mul_f64(y, y, yy);
  kernels::mul_f64(x, y, xy);

  LocalStats s;
  s.mu1 = kernels::conv2_valid(x, w, h, taps, s.w, s.h);
  s.mu2 = kernels::conv2_valid(y, w, h, taps, s.w, s.h);
  s.var1 = kernels::conv2_valid(xx, w, h, taps, s.w, s.h);
  s.var2 = kernels::conv2_valid(yy, w, h, taps, s.w, s.h);
  s.cov = kernels::conv2_valid(xy, w, h, taps, s.w, s.h);
  for (std::size_t i = 0; i < s.mu1.size(); ++i) {
    s.var1[i] -= s.mu1[i] * s.mu1[i];
    s.var2[i] -= s.mu2[i] * s.mu2[i];
    s.cov[i] -= s.mu1[i] * s.mu2[i];
  }
  return s;
}

// mean SSIM and mean contrast-structure of one scale
struct SsimMeans {
  double ssim = 0.0;
  double cs = 0.0;
};

SsimMeans ssim_means(const std::vector<double>& x, const std::vector<double>& y,
                     int w, int h) {
  static const std::vector<double> taps = gaussian_taps(11, 1.5);
  const LocalStats s = local_stats(x, y, w, h, taps);
  std::vector<double> ssim_map(s.mu1.size()), cs_map(s.mu1.size());
  for (std::size_t i = 0; i < s.mu1.size(); ++i) {
    const double cs = (2.0 * s.cov[i] + kC2) / (s.var1[i] + s.var2[i] + kC2);
    const double lum = (2.0 * s.mu1[i] * s.mu2[i] + kC1) /
                       (s.mu1[i] * s.mu1[i] + s.mu2[i] * s.mu2[i] + kC1);
    cs_map[i] = cs;
    ssim_map[i] = lum * cs;
  }
  return {mean_of(ssim_map), mean_of(cs_map)};
}

std::vector<double> downsample2(const std::vector<double>& src, int w, int h,
                                int& out_w, int& out_h) {
  out_w = w / 2;
  out_h = h / 2;
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
  const auto stride = static_cast<std::size_t>(w);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      const std::size_t i0 =
          2 * static_cast<std::size_t>(y) * stride + 2 * static_cast<std::size_t>(x);
      out[static_cast<std::size_t>(y) * out_w + x] =
          0.25 * (src[i0] + src[i0 + 1] + src[i0 + stride] + src[i0 + stride + 1]);
    }
  return out;
}

std::vector<double> decimate2(const std::vector<double>& src, int w, int h,
                              int& out_w, int& out_h) {
  out_w = (w + 1) / 2;
  out_h = (h + 1) / 2;
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x)
      out[static_cast<std::size_t>(y) * out_w + x] =
          src[2 * static_cast<std::size_t>(y) * w + 2 * static_cast<std::size_t>(x)];
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

}  // namespace

double psnr(const Frame& ref, const Frame& deg) {
  check_dims(ref, deg);
  const auto n = static_cast<double>(ref.luma.size());
  const std::uint64_t ssd = kernels::sum_sq_diff_u8(ref.luma, deg.luma);
  if (ssd == 0) return kPsnrCap;
  const double mse = static_cast<double>(ssd) / n;
  return std::min(10.0 * std::log10(255.0 * 255.0 / mse), kPsnrCap);
}

double ssim(const Frame& ref, const Frame& deg) {
  check_dims(ref, deg);
  if (ref.width < 11 || ref.height < 11)
    throw FrameTooSmall("ssim needs at least 11x11");
  return ssim_means(to_plane(ref), to_plane(deg), ref.width, ref.height).ssim;
}

double ms_ssim(const Frame& ref, const Frame& deg) {
  check_dims(ref, deg);
  if (ref.width < 176 || ref.height < 176)
    throw FrameTooSmall("ms-ssim needs at least 176x176");

  static constexpr double kWeights[5] = {0.0448, 0.2856, 0.3001, 0.2363,
                                         0.1333};
  std::vector<double> x = to_plane(ref);
  std::vector<double> y = to_plane(deg);
  int w = ref.width, h = ref.height;

  double score = 1.0;
  for (int level = 0; level < 5; ++level) {
    const SsimMeans m = ssim_means(x, y, w, h);
    // negative means cannot be raised to fractional powers; floor at zero
    const double term = std::max(level == 4 ? m.ssim : m.cs, 0.0);
    score *= std::pow(term, kWeights[level]);
    if (level < 4) {
      int nw = 0, nh = 0;
      x = downsample2(x, w, h, nw, nh);
      y = downsample2(y, w, h, nw, nh);
      w = nw;
      h = nh;
    }
  }
  return score;
}

double vifp(const Frame& ref, const Frame& deg) {
  check_dims(ref, deg);
  if (ref.width < 64 || ref.height < 64)
    throw FrameTooSmall("vifp needs at least 64x64");

  constexpr double kEps = 1e-10;
  constexpr double kSigmaNsq = 2.0;

  std::vector<double> x = to_plane(ref);
  std::vector<double> y = to_plane(deg);
  int w = ref.width, h = ref.height;

  double num = 0.0, den = 0.0;
  for (int scale = 1; scale <= 4; ++scale) {
    const int win = (1 << (4 - scale + 1)) + 1;  // 17, 9, 5, 3
    const auto taps = gaussian_taps(win, win / 5.0);

    if (scale > 1) {
      int cw = 0, ch = 0;
      x = kernels::conv2_valid(x, w, h, taps, cw, ch);
      y = kernels::conv2_valid(y, w, h, taps, cw, ch);
      x = decimate2(x, cw, ch, w, h);
      y = decimate2(y, cw, ch, w, h);
    }

    const LocalStats s = local_stats(x, y, w, h, taps);
    for (std::size_t i = 0; i < s.mu1.size(); ++i) {
      const double var1 = std::max(s.var1[i], 0.0);
      const double var2 = std::max(s.var2[i], 0.0);
      const double g = s.cov[i] / (var1 + kEps);
      const double sv = std::max(var2 - g * s.cov[i], 0.0);
      num += std::log(1.0 + g * g * var1 / (sv + kSigmaNsq));
      den += std::log(1.0 + var1 / kSigmaNsq);
    }
  }
  if (den == 0.0)
    throw DegenerateReference("reference has zero variance everywhere");
  return num / den;
}

QualityScore sequence_score(const FrameSequence& ref, const FrameSequence& deg,
                            VideoMetric metric) {
  if (ref.frames.size() != deg.frames.size())
    throw LengthMismatch("sequences differ in frame count");
  QualityScore score;
  score.metric = metric;
  score.per_frame.reserve(ref.frames.size());
  for (std::size_t i = 0; i < ref.frames.size(); ++i) {
    double v = 0.0;
    switch (metric) {
      case VideoMetric::psnr: v = psnr(ref.frames[i], deg.frames[i]); break;
      case VideoMetric::ssim: v = ssim(ref.frames[i], deg.frames[i]); break;
      case VideoMetric::ms_ssim: v = ms_ssim(ref.frames[i], deg.frames[i]); break;
      case VideoMetric::vifp: v = vifp(ref.frames[i], deg.frames[i]); break;
    }
    score.per_frame.push_back(v);
  }
  if (!score.per_frame.empty())
    score.aggregate = pairwise_sum(score.per_frame) /
                      static_cast<double>(score.per_frame.size());
  return score;
}

int align_temporal(const FrameSequence& reference,
                   const FrameSequence& degraded, int max_offset_frames,
                   int sample_stride) {
  if (max_offset_frames < 0) throw InputError("max_offset_frames must be >= 0");
  if (sample_stride < 1) throw InputError("sample_stride must be >= 1");
  if (reference.width() != degraded.width() ||
      reference.height() != degraded.height())
    throw DimensionMismatch("sequences must be preprocessed to equal dims");

  const auto n_ref = static_cast<long>(reference.frames.size());
  const auto n_deg = static_cast<long>(degraded.frames.size());

  int best_offset = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  bool any_candidate = false;

  // ordered by (|o|, o) so the first strictly-best candidate wins ties
  for (int mag = 0; mag <= max_offset_frames; ++mag) {
    for (const int o : {-mag, mag}) {
      if (o == 0 && mag != 0) continue;
      const long lo = std::max(0L, static_cast<long>(-o));
      const long hi = std::min(n_ref, n_deg - o);
      double sum = 0.0;
      long sampled = 0;
      for (long i = lo; i < hi; i += sample_stride) {
        sum += ssim(reference.frames[static_cast<std::size_t>(i)],
                    degraded.frames[static_cast<std::size_t>(i + o)]);
        ++sampled;
      }
      if (sampled < 10) continue;
      any_candidate = true;
      const double score = sum / static_cast<double>(sampled);
      if (score > best_score) {
        best_score = score;
        best_offset = o;
      }
    }
  }
  if (!any_candidate)
    throw InsufficientOverlap("fewer than 10 sampled overlapping frames");
  return best_offset;
}

}  // namespace vcbench
