#pragma once

#include <string>
#include <vector>

#include "vcbench/frame.hpp"

namespace vcbench {

enum class VideoMetric { psnr, ssim, ms_ssim, vifp };

std::string to_string(VideoMetric m);
VideoMetric video_metric_from_string(const std::string& name);

// Luma PSNR in dB, capped at 100 (zero-MSE frames score the cap so
// sequence averages stay finite).
double psnr(const Frame& ref, const Frame& deg);

// Mean local SSIM index, 11x11 Gaussian window (sigma 1.5),
// C1 = (0.01*255)^2, C2 = (0.03*255)^2, valid-region convolution.
double ssim(const Frame& ref, const Frame& deg);

// Five-scale extension: contrast-structure means at every scale weighted
// (0.0448, 0.2856, 0.3001, 0.2363, 0.1333), the luminance term folded in
// at the coarsest scale only; 2x2-mean downsampling between scales.
// Needs dims >= 176 so the coarsest scale still fits the 11x11 window.
double ms_ssim(const Frame& ref, const Frame& deg);

// Pixel-domain visual information fidelity over 4 scales. Scale s uses a
// Gaussian window of size 2^(4-s+1)+1 with sigma = size/5; per-block gain
// g = cov/(var_ref + 1e-10), distortion noise max(var_deg - g*cov, 0),
// sensor noise 2. Throws DegenerateReference when the reference carries no
// information (zero variance everywhere).
double vifp(const Frame& ref, const Frame& deg);

struct QualityScore {
  VideoMetric metric = VideoMetric::psnr;
  std::vector<double> per_frame;
  double aggregate = 0.0;  // mean over frames (pairwise summation)
};

QualityScore sequence_score(const FrameSequence& ref, const FrameSequence& deg,
                            VideoMetric metric);

// Signed frame offset o in [-max_offset, +max_offset] maximizing mean SSIM
// of ref[i] against deg[i+o], sampled every sample_stride frames. Ties go
// to the smaller |o|. Throws InsufficientOverlap when no candidate offset
// has at least 10 sampled overlapping frames.
int align_temporal(const FrameSequence& reference,
                   const FrameSequence& degraded, int max_offset_frames,
                   int sample_stride = 5);

}  // namespace vcbench
