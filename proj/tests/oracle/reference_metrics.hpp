#pragma once

// Independent direct-definition implementations of the video quality
// metrics, kept deliberately separate from the library: plain nested loops
// over explicit 2-D windows, no shared helpers, no SIMD. These are the
// oracles the fast implementations are checked against.

#include "vcbench/frame.hpp"

namespace oracle {

double ref_psnr(const vcbench::Frame& ref, const vcbench::Frame& deg);
double ref_ssim(const vcbench::Frame& ref, const vcbench::Frame& deg);
double ref_ms_ssim(const vcbench::Frame& ref, const vcbench::Frame& deg);
double ref_vifp(const vcbench::Frame& ref, const vcbench::Frame& deg);

}  // namespace oracle
